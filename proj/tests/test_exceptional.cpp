#include "kneadforge/exceptional.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace kneadforge;

namespace {

IntPoly P(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long x : cs) v.emplace_back(x);
    return IntPoly(v);
}

AlgebraicNumber quartic_root() { return AlgebraicNumber(P({-1, 0, -1, 0, 1}), Rat(1), Rat(2)); }

}  // namespace

TEST_CASE("turning point classification") {
    SECTION("exceptional at the quartic root") {
        BimodalMap m{quartic_root(), Rat(0)};
        Classification c = classify_turning_point(m, 1, 20);
        REQUIRE(c.kind == TurningClass::Exceptional);
        REQUIRE(c.return_step == 6);
        REQUIRE(format_itinerary(c.itinerary) == "c1 J2 J1 J2 J0 J2 c1");
        Classification c2 = classify_turning_point(m, 2, 20);
        REQUIRE(c2.kind == TurningClass::Exceptional);
        REQUIRE(c2.return_step == 6);
    }
    SECTION("ordinary period-two point") {
        BimodalMap m{AlgebraicNumber::from_rational(2), Rat(-1, 3)};
        Classification c = classify_turning_point(m, 1, 20);
        REQUIRE(c.kind == TurningClass::Ordinary);
        REQUIRE(c.return_step == 2);
        REQUIRE(c.eq.Q[1].evaluate<Rat>(Rat(2)) == 3);

        Classification c2 = classify_turning_point(m, 2, 20);
        REQUIRE(c2.kind == TurningClass::Ordinary);
        REQUIRE(c2.return_step == 2);
        REQUIRE(format_itinerary(c2.itinerary) == "c2 J0 c1");
        REQUIRE(c2.eq.Q[1] == P({-1, 0, 1}));
        REQUIRE(c2.eq.Q[0] == P({-1, -2, 1}));
    }
    SECTION("generic orbit stays uncontrolled") {
        BimodalMap m{AlgebraicNumber::from_rational(2), Rat(0)};
        Classification c = classify_turning_point(m, 1, 100);
        REQUIRE(c.kind == TurningClass::NotControlled);
        REQUIRE(c.horizon == 100);
        REQUIRE(c.return_step == -1);
    }
    SECTION("equation-level infeasible case") {
        BifurcationEq eq;
        eq.chart = Chart::Bimodal;
        eq.Q = {P({0, 1}), P({-2, 1})};
        REQUIRE(classify_equation(eq, AlgebraicNumber::from_rational(2)) ==
                TurningClass::InfeasibleCase3);
    }
}

TEST_CASE("factor extraction") {
    Itinerary base = parse_itinerary("c1 J2 c1");
    REQUIRE(extract_factor(base, parse_itinerary("c1 J2 J0 J2 c1")) == P({1, 0, 1}));
    REQUIRE(extract_factor(base, parse_itinerary("c1 J2 J1 J2 c1")) == P({-1, 0, 1}));
    REQUIRE(extract_factor(base, parse_itinerary("c1 J2 J1 J2 J0 J2 c1")) ==
            P({-1, 0, -1, 0, 1}));
    SECTION("factor divides every coefficient independently") {
        BifurcationEq eb = derive_bifurcation_eq(base);
        BifurcationEq ee = derive_bifurcation_eq(parse_itinerary("c1 J2 J1 J2 J0 J2 c1"));
        IntPoly F = P({-1, 0, -1, 0, 1});
        for (int j : {0, 1}) REQUIRE(ee.Q[j] == F * eb.Q[j]);
    }
    SECTION("incompatible extensions are rejected") {
        REQUIRE_THROWS_AS(extract_factor(base, parse_itinerary("c1 J2 J2 J2 c1")),
                          NotDivisible);
        REQUIRE_THROWS_AS(extract_factor(base, parse_itinerary("c1 J2 J0 J0 J2 c1")),
                          NotDivisible);
    }
}

TEST_CASE("cascade search finds the quartic isentrope") {
    Itinerary base = parse_itinerary("c1 J2 c1");
    auto records = cascade_search(base, 2, Rat(1), Rat(2));
    REQUIRE(records.size() == 1);
    const ExceptionalRecord& rec = records[0];
    REQUIRE(format_itinerary(rec.extended) == "c1 J2 J1 J2 J0 J2 c1");
    REQUIRE(rec.factor == P({-1, 0, -1, 0, 1}));
    REQUIRE(rec.roots_in_window.size() == 1);
    REQUIRE(rec.unrealized.empty());
    REQUIRE(std::abs(rec.roots_in_window[0].approx() - 1.27202) < 1e-4);
    const RealizationInterval& R = rec.realizations[0];
    REQUIRE_FALSE(R.empty);
    REQUIRE(std::abs(approx_at(R.lo, R.lambda) - (-0.119726)) < 1e-4);
    REQUIRE(std::abs(approx_at(R.hi, R.lambda) - 0.346014) < 1e-4);
    REQUIRE_FALSE(R.lo_attained);
    REQUIRE_FALSE(R.hi_attained);

    SECTION("classification confirms the record at a sampled offset") {
        Rat b = rational_inside(R);
        BimodalMap m{rec.roots_in_window[0], b};
        REQUIRE(classify_turning_point(m, 1, 20).kind == TurningClass::Exceptional);
    }
    SECTION("parallel run merges into the identical order") {
        auto par = cascade_search(base, 2, Rat(1), Rat(2), {0, 1}, 4);
        REQUIRE(par.size() == records.size());
        for (size_t i = 0; i < par.size(); ++i) {
            REQUIRE(format_itinerary(par[i].extended) == format_itinerary(records[i].extended));
            REQUIRE(par[i].factor == records[i].factor);
            REQUIRE(par[i].roots_in_window.size() == records[i].roots_in_window.size());
        }
    }
    SECTION("deeper search keeps the record") {
        auto deeper = cascade_search(base, 3, Rat(1), Rat(2), {0, 1}, 2);
        bool found = false;
        for (const auto& r : deeper)
            if (r.factor == P({-1, 0, -1, 0, 1})) found = true;
        REQUIRE(found);
    }
}

TEST_CASE("cascade search finds the octic isentrope") {
    Itinerary base = parse_itinerary("c1 J2 J0 J1 c1");
    auto records = cascade_search(base, 2, Rat(1), Rat(2));
    const ExceptionalRecord* octic = nullptr;
    for (const auto& r : records)
        if (r.factor == P({-1, 0, 0, 0, -1, 0, 0, 0, 1})) octic = &r;
    REQUIRE(octic != nullptr);
    REQUIRE(format_itinerary(octic->extended) == "c1 J2 J0 J1 J0 J2 J0 J1 J1 J2 J0 J1 c1");
    REQUIRE(octic->roots_in_window.size() == 1);
    REQUIRE(std::abs(octic->roots_in_window[0].approx() - 1.12784) < 1e-4);
    const RealizationInterval& R = octic->realizations[0];
    REQUIRE(std::abs(approx_at(R.lo, R.lambda) - (-0.808065)) < 1e-4);
    REQUIRE(std::abs(approx_at(R.hi, R.lambda) - (-0.720696)) < 1e-4);
}

TEST_CASE("no realized records above slope two") {
    for (const char* b : {"c1 J2 c1", "c1 J2 J0 J1 c1"}) {
        auto records = cascade_search(parse_itinerary(b), 2, Rat(2), Rat(3));
        for (const auto& r : records) {
            INFO(format_itinerary(r.extended));
            CHECK(r.roots_in_window.empty());
        }
    }
}

TEST_CASE("cascade input validation") {
    REQUIRE_THROWS_AS(cascade_search(parse_itinerary("c1 J2 c2"), 2, Rat(1), Rat(2)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(cascade_search(parse_itinerary("c1 J2 J0"), 2, Rat(1), Rat(2)),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(
        cascade_search(parse_itinerary("c1 J2 c1"), 2, Rat(1), Rat(2), std::vector<int>{}),
        std::invalid_argument);
}
