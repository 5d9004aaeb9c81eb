#include <catch2/catch_amalgamated.hpp>

#include "kneadforge/itinerary.hpp"

using namespace kneadforge;

static IntPoly P(std::initializer_list<long> cs) { return int_poly_from(cs); }
static AlgebraicNumber lam_e() { return AlgebraicNumber(P({-1, 0, -1, 0, 1}), Rat(1), Rat(2)); }
static AlgebraicNumber lam_oct() {
    return AlgebraicNumber(P({-1, 0, 0, 0, -1, 0, 0, 0, 1}), Rat(1), Rat(2));
}
static AlgebraicNumber two() { return AlgebraicNumber::from_rational(Rat(2)); }

TEST_CASE("itinerary text round trip", "[itinerary]") {
    Itinerary I = parse_itinerary("c1 J2 J1 J2 J0 J2 c1 | period=6");
    REQUIRE(I.length() == 7);
    CHECK(I.symbols[0] == sym_c(1));
    CHECK(I.symbols[1] == sym_J(2));
    CHECK(I.periodic_tail.has_value());
    CHECK(I.periodic_tail->second == 6);
    CHECK(format_itinerary(I) == "c1 J2 J1 J2 J0 J2 c1 | period=6");
    CHECK(I.at(7) == sym_J(2));   // continues periodically
    CHECK(I.at(12) == sym_c(1));

    CHECK_THROWS_AS(parse_itinerary("c1 X2"), BadItinerary);
    CHECK_THROWS_AS(parse_itinerary(""), BadItinerary);
    CHECK_THROWS_AS(parse_itinerary("c1 J2 | period=5"), BadItinerary);  // tail longer than window
    Itinerary inconsistent{{sym_c(1), sym_J(2), sym_J(0)}, {{0, 2}}};
    CHECK_THROWS_AS(inconsistent.validate_tail(), BadItinerary);
    Itinerary open = parse_itinerary("c1 J2");
    CHECK_THROWS_AS(open.at(5), LengthMismatch);
}

TEST_CASE("mirror itinerary", "[itinerary]") {
    Itinerary I = parse_itinerary("c1 J2 J1 J2 J0 J2 c1 | period=6");
    Itinerary M = mirror_itinerary(I);
    CHECK(format_itinerary(M) == "c2 J0 J1 J0 J2 J0 c2 | period=6");
    CHECK(mirror_itinerary(M) == I);
}

TEST_CASE("compatibility relation", "[itinerary]") {
    Itinerary tilde = parse_itinerary("c1 J2 c1 J2 c1");
    Itinerary I = parse_itinerary("c1 J2 J0 J2 c1");
    CHECK(is_compatible(tilde, I));
    CHECK(is_compatible(I, I));
    CHECK(!is_compatible(parse_itinerary("c1 J2 c1"), parse_itinerary("c1 J0 c1")));
    // turning symbol faces only its two adjacent intervals
    CHECK(is_compatible(parse_itinerary("c2 J0 c2"), parse_itinerary("c2 J0 J2")));
    CHECK(!is_compatible(parse_itinerary("c2 J0 c2"), parse_itinerary("c2 J0 J0")));
    // periodic tail extends the shorter window
    Itinerary tp = parse_itinerary("c1 J2 c1 | period=2");
    CHECK(is_compatible(tp, parse_itinerary("c1 J2 J0 J2 c1")));
    CHECK(is_compatible(tp, parse_itinerary("c1 J2 J1 J2 J0 J2 c1")));
    // without tails the comparison stops at the shorter explicit window
    CHECK(is_compatible(parse_itinerary("c1 J2"), parse_itinerary("c1 J2 J0")));
    CHECK(!is_compatible(parse_itinerary("c1 J0"), parse_itinerary("c1 J2 J0")));
    // two periodic itineraries are compared across a full common period
    CHECK(is_compatible(parse_itinerary("c1 J2 c1 | period=2"),
                        parse_itinerary("c1 J2 J0 J2 c1 | period=4")));
    CHECK(!is_compatible(parse_itinerary("c1 J2 J0 | period=1"),
                         parse_itinerary("c1 J2 J0 J2 c1 | period=4")));
}

TEST_CASE("turning itineraries at the quartic slope", "[itinerary]") {
    BimodalMap m{lam_e(), Rat(0)};
    CHECK(format_itinerary(itinerary_of_turning(m, 1, 6)) == "c1 J2 J1 J2 J0 J2 c1 | period=6");
    CHECK(format_itinerary(itinerary_of_turning(m, 2, 6)) == "c2 J0 J1 J0 J2 J0 c2 | period=6");

    // mirror symmetry: c^2 orbit at b equals mirrored c^1 orbit at -b
    BimodalMap p{lam_e(), Rat(1, 20)}, q{lam_e(), Rat(-1, 20)};
    CHECK(mirror_itinerary(itinerary_of_turning(p, 1, 6)).symbols ==
          itinerary_of_turning(q, 2, 6).symbols);
}

TEST_CASE("eventually periodic itinerary", "[itinerary]") {
    BimodalMap m{two(), Rat(-1, 3)};
    Itinerary i1 = itinerary_of_turning(m, 1, 4);
    CHECK(format_itinerary(i1) == "c1 J2 c1 J2 c1 | period=2");
    CHECK(i1.periodic_tail->first == 0);
    Itinerary i2 = itinerary_of_turning(m, 2, 4);
    CHECK(format_itinerary(i2) == "c2 J0 c1 J2 c1 | period=2");
    CHECK(i2.periodic_tail->first == 2);  // lands on the period-two turning orbit
}

TEST_CASE("fixed boundary point has constant itinerary", "[itinerary]") {
    BimodalMap m{two(), Rat(1, 5)};
    // x = a = 1 at lambda = 2
    Itinerary I = itinerary_of(m, Rat(1), 8);
    for (const auto& s : I.symbols) CHECK(s == sym_J(2));
}

TEST_CASE("unit-chart itineraries agree with the bimodal chart", "[itinerary]") {
    BimodalMap m{lam_e(), Rat(0)};
    PLMap u = bimodal_to_unit(m);
    Itinerary ui = itinerary_of(u, turning_point(u, 1, 1), 6);
    CHECK(ui.symbols == itinerary_of_turning(m, 1, 6).symbols);

    // collided maps have no well-defined itinerary
    CombData X3{1, {1}, {3}, {1}};
    std::vector<RatPoly> a{RatPoly{}, RatPoly{Rat(1)}};
    std::vector<std::vector<RatPoly>> coll{{unit_left_offset(1), RatPoly{Rat(0), Rat(1)},
                                            RatPoly{Rat(-1)}, unit_right_offset(1, 3)}};
    auto res = feasibility(X3, two(), a, coll);
    REQUIRE(res.map.has_value());
    CHECK_THROWS_AS(itinerary_of(*res.map, turning_point(*res.map, 1, 1), 3),
                    CollidedTurningPoints);
}

TEST_CASE("linear forms of the turning orbit", "[itinerary]") {
    // q(c1) = (b+1)/2
    BimodalForms f = bimodal_linear_forms({sym_c(1)});
    CHECK(f.A[0] == DyadicPoly::half(P({1})));
    CHECK(f.B[0] == DyadicPoly::half(P({1})));
    // q^2 along J2: lambda (b+1)/2 - 1
    f = bimodal_linear_forms({sym_c(1), sym_J(2)});
    CHECK(f.A[1] == DyadicPoly::half(P({0, 1})));
    CHECK(f.B[1] == DyadicPoly(P({-2, 1}), 1));
    // c2 start flips the constant
    f = bimodal_linear_forms({sym_c(2)});
    CHECK(f.B[0] == DyadicPoly::half(P({-1})));

    CHECK_THROWS_AS(bimodal_linear_forms({sym_J(0)}), BadItinerary);
    CHECK_THROWS_AS(bimodal_linear_forms({sym_c(1), sym_c(1)}), BadItinerary);
}

TEST_CASE("realization: exact period-two point", "[itinerary]") {
    RealizationInterval R = realization_interval(parse_itinerary("c1 J2 c1"), two());
    REQUIRE(!R.empty);
    CHECK(R.is_point());
    CHECK(R.lo_attained);
    CHECK(R.hi_attained);
    CHECK(R.lo.evaluate(Rat(2)) == Rat(-1, 3));

    // same itinerary at the quartic slope: the point is -(lambda-1)/(lambda+1)
    RealizationInterval Re = realization_interval(parse_itinerary("c1 J2 c1"), lam_e());
    REQUIRE(!Re.empty);
    CHECK(Re.is_point());
    CHECK(Re.lo == RatFunc(P({1, -1}), P({1, 1})));
}

TEST_CASE("realization: exceptional window at the quartic slope", "[itinerary]") {
    Itinerary Ip = parse_itinerary("c1 J2 J1 J2 J0 J2 c1");
    RealizationInterval R = realization_interval(Ip, lam_e());
    REQUIRE(!R.empty);
    CHECK(!R.is_point());
    CHECK(!R.lo_attained);
    CHECK(!R.hi_attained);
    CHECK(R.lo == RatFunc(P({1, -1}), P({1, 1})));
    double lo = rat_double(enclose_at(R.lo, R.lambda, Rat(1, 10000000)).mid());
    double hi = rat_double(enclose_at(R.hi, R.lambda, Rat(1, 10000000)).mid());
    CHECK(std::abs(lo - (-0.119726)) < 1e-5);
    CHECK(std::abs(hi - 0.346014) < 1e-5);

    // round trip at rationals inside, including the endpoints' neighborhood
    for (Rat b : {Rat(0), Rat(1, 20), Rat(3, 10), Rat(-11, 100)}) {
        BimodalMap m{lam_e(), b};
        CHECK(itinerary_of_turning(m, 1, 6).symbols == Ip.symbols);
    }
    Rat inside = rational_inside(R);
    CHECK(itinerary_of_turning({lam_e(), inside}, 1, 6).symbols == Ip.symbols);
}

TEST_CASE("realization: twelve-step window at the octic slope", "[itinerary]") {
    Itinerary I = parse_itinerary("c1 J2 J0 J1 J0 J2 J0 J1 J1 J2 J0 J1 c1");
    RealizationInterval R = realization_interval(I, lam_oct());
    REQUIRE(!R.empty);
    CHECK(!R.lo_attained);
    CHECK(!R.hi_attained);
    double lo = rat_double(enclose_at(R.lo, R.lambda, Rat(1, 10000000)).mid());
    double hi = rat_double(enclose_at(R.hi, R.lambda, Rat(1, 10000000)).mid());
    CHECK(std::abs(lo - (-0.808065)) < 1e-5);
    CHECK(std::abs(hi - (-0.720696)) < 1e-5);
    Rat inside = rational_inside(R);
    CHECK(itinerary_of_turning({lam_oct(), inside}, 1, 12).symbols == I.symbols);
}

TEST_CASE("realization: empty and mirrored", "[itinerary]") {
    CHECK(realization_interval(parse_itinerary("c1 J0 c1"), two()).empty);

    Itinerary Ip = parse_itinerary("c1 J2 J1 J2 J0 J2 c1");
    RealizationInterval R = realization_interval(Ip, lam_e());
    RealizationInterval M = realization_interval(mirror_itinerary(Ip), lam_e());
    REQUIRE(!M.empty);
    CHECK(M.lo == -R.hi);
    CHECK(M.hi == -R.lo);
    CHECK(M.lo_attained == R.hi_attained);
    CHECK(M.hi_attained == R.lo_attained);
}

TEST_CASE("realization: prefixes only widen", "[itinerary]") {
    Itinerary Ip = parse_itinerary("c1 J2 J1 J2 J0 J2 c1");
    RealizationInterval prev = realization_interval(Ip, lam_e());
    for (int len = Ip.length() - 1; len >= 2; --len) {
        Itinerary pre{std::vector<Symbol>(Ip.symbols.begin(), Ip.symbols.begin() + len), {}};
        RealizationInterval R = realization_interval(pre, lam_e());
        REQUIRE(!R.empty);
        CHECK(cmp_at(R.lo, prev.lo, R.lambda) <= 0);
        CHECK(cmp_at(R.hi, prev.hi, R.lambda) >= 0);
        prev = R;
    }
}
