#include "kneadforge/bifurcation.hpp"

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace kneadforge;

namespace {

IntPoly P(std::initializer_list<long> cs) {
    std::vector<Int> v;
    for (long x : cs) v.emplace_back(x);
    return IntPoly(v);
}

Itinerary closed(const std::string& text) { return parse_itinerary(text); }

}  // namespace

TEST_CASE("period-two equation and its reduction") {
    BifurcationEq eq = derive_bifurcation_eq(closed("c1 J2 c1"));
    REQUIRE(eq.chart == Chart::Bimodal);
    REQUIRE(eq.Q.size() == 2);
    REQUIRE(eq.Q[1] == P({-1, 0, 1}));   // (lambda^2 - 1) b
    REQUIRE(eq.Q[0] == P({-1, 2, -1}));  // = -(lambda - 1)^2
    REQUIRE(eq.cleared_pow2 == 0);
    REQUIRE_FALSE(eq.reduced);

    BifurcationEq red = reduce(eq);
    REQUIRE(red.reduced);
    REQUIRE(red.Q[1] == P({1, 1}));   // (lambda + 1) b
    REQUIRE(red.Q[0] == P({1, -1}));  // = 1 - lambda
}

TEST_CASE("doubling-run family of equations") {
    for (int n = 2; n <= 10; ++n) {
        std::vector<Symbol> syms{sym_c(1)};
        for (int i = 0; i < n - 1; ++i) syms.push_back(sym_J(2));
        syms.push_back(sym_c(1));
        BifurcationEq eq = derive_bifurcation_eq(Itinerary{syms, std::nullopt});

        std::vector<Int> q1(n + 1, 0), q0(n + 1, 2);
        q1[0] = -1;
        q1[n] = 1;
        q0[0] = -1;
        q0[n] = -1;
        REQUIRE(eq.Q[1] == IntPoly(q1));  // lambda^n - 1
        REQUIRE(eq.Q[0] == IntPoly(q0));  // -lambda^n + 2 lambda^{n-1} + ... + 2 lambda - 1
    }
}

TEST_CASE("period-four equation factors") {
    BifurcationEq eq = derive_bifurcation_eq(closed("c1 J2 J0 J1 c1"));
    REQUIRE(eq.Q[1] == P({1, -2, 0, 0, 1}));
    REQUIRE(eq.Q[0] == P({1, 0, -2, 2, -1}));
    REQUIRE(eq.Q[1] == P({-1, 1}) * P({-1, 1, 1, 1}));    // (L-1)(L^3+L^2+L-1)
    REQUIRE(eq.Q[0] == P({-1, 1}) * P({-1, -1, 1, -1}));  // (L-1)(-L^3+L^2-L-1)

    BifurcationEq red = reduce(eq);
    REQUIRE(red.Q[1] == P({-1, 1, 1, 1}));
    REQUIRE(red.Q[0] == P({-1, -1, 1, -1}));
}

TEST_CASE("second turning point equation") {
    BifurcationEq eq = derive_bifurcation_eq(closed("c2 J0 c2"));
    REQUIRE(eq.Q[1] == P({-1, 0, 1}));
    REQUIRE(eq.Q[0] == P({1, -2, 1}));  // +(lambda - 1)^2
}

TEST_CASE("coefficient structure laws") {
    SECTION("periodic first turning point") {
        for (const char* t : {"c1 J2 c1", "c1 J2 J0 J1 c1", "c1 J2 J1 J2 J0 J2 c1"}) {
            auto r = coefficient_structure_check(derive_bifurcation_eq(closed(t)), 1);
            INFO(t);
            CHECK(r.pass);
            CHECK(r.first_violation.empty());
            CHECK_FALSE(r.joint_sign_deviation);
        }
        for (int n = 2; n <= 10; ++n) {
            std::vector<Symbol> syms{sym_c(1)};
            for (int i = 0; i < n - 1; ++i) syms.push_back(sym_J(2));
            syms.push_back(sym_c(1));
            auto r = coefficient_structure_check(
                derive_bifurcation_eq(Itinerary{syms, std::nullopt}), 1);
            CHECK(r.pass);
        }
    }
    SECTION("second turning point cases") {
        for (const char* t : {"c2 J0 c2", "c2 J0 J1 J0 J2 J0 c2", "c2 J0 J2 J1 c2"}) {
            auto r = coefficient_structure_check(derive_bifurcation_eq(closed(t)), 2);
            INFO(t);
            CHECK(r.pass);
        }
    }
    SECTION("hand-built violations are caught") {
        BifurcationEq bad;
        bad.chart = Chart::Bimodal;
        bad.Q = {P({1, 3, 1}), P({-1, 0, -1})};
        auto r = coefficient_structure_check(bad, 1);
        REQUIRE_FALSE(r.pass);
        REQUIRE(r.first_violation.find("middle") != std::string::npos);

        bad.Q = {P({1, 0, 1}), P({-1, 0, 0, -1})};
        r = coefficient_structure_check(bad, 1);
        REQUIRE_FALSE(r.pass);
        REQUIRE(r.first_violation == "degrees differ");
    }
    SECTION("raw bimodal input required") {
        BifurcationEq eq = derive_bifurcation_eq(closed("c1 J2 c1"));
        REQUIRE_THROWS_AS(coefficient_structure_check(reduce(eq), 1), std::invalid_argument);
        BifurcationEq unit_eq = derive_bifurcation_eq_unit(2, 1, closed("c1 J2 c1"));
        REQUIRE_THROWS_AS(coefficient_structure_check(unit_eq, 1), std::invalid_argument);
    }
}

TEST_CASE("two-equation residual") {
    BifurcationEq e1 = derive_bifurcation_eq(closed("c1 J2 c1"));
    BifurcationEq e2 = derive_bifurcation_eq(closed("c2 J0 c2"));
    REQUIRE(eq11_residual(e1, e2) == P({2, -4, 0, 4, -2}));  // -2 (L-1)^2 (L^2-1)
    REQUIRE(eq11_residual(e1, e1).is_zero());
    REQUIRE_THROWS_AS(eq11_residual(e1, derive_bifurcation_eq_unit(2, 1, closed("c1 J2 c1"))),
                      std::invalid_argument);
}

TEST_CASE("period-six equations vanish jointly at the quartic root") {
    AlgebraicNumber lam_e(P({-1, 0, -1, 0, 1}), Rat(1), Rat(2));
    BifurcationEq e1 = derive_bifurcation_eq(closed("c1 J2 J1 J2 J0 J2 c1"));
    BifurcationEq e2 = derive_bifurcation_eq(closed("c2 J0 J1 J0 J2 J0 c2"));
    for (const auto& eq : {e1, e2}) {
        REQUIRE(sign_at(eq.Q[1], lam_e) == 0);
        REQUIRE(sign_at(eq.Q[0], lam_e) == 0);
    }
    IntPoly g = poly_gcd(e1.Q[0], e1.Q[1]);
    REQUIRE_NOTHROW(divide_exact(g, P({-1, 0, -1, 0, 1})));
    REQUIRE(sign_at(eq11_residual(e1, e2), lam_e) == 0);
}

TEST_CASE("bimodal and unit chart recursions agree") {
    std::mt19937_64 rng(2024);
    for (int iter = 0; iter < 50; ++iter) {
        std::vector<Symbol> prefix{sym_c(1 + (int)(rng() % 2))};
        int len = 2 + (int)(rng() % 8);
        for (int i = 1; i < len; ++i) prefix.push_back(sym_J((int)(rng() % 3)));

        BimodalForms f = bimodal_linear_forms(prefix);
        LinearFormOrbit u = symbolic_orbit_unit(2, 1, prefix);
        REQUIRE(u.w.size() == f.A.size());
        for (size_t k = 0; k < f.A.size(); ++k) {
            // dyadic denominators stay at worst one halving
            CHECK(f.A[k].shift <= 1);
            CHECK(f.B[k].shift <= 1);
            for (int i = 0; i <= 2; ++i) CHECK(u.w[k][i].shift <= 1);
            // chart conversion: same b-dependence, matching constant part
            CHECK(f.A[k] == u.w[k][1]);
            RatPoly lhs = (f.B[k].to_rat_poly_form() * RatPoly({Rat(-1), Rat(1)}) +
                           RatPoly({Rat(1)}))
                              .scaled(Rat(1, 2));
            RatPoly rhs = u.w[k][1].to_rat_poly_form() * RatPoly({Rat(1, 2), Rat(1, 2)}) +
                          u.w[k][2].to_rat_poly_form() * RatPoly({Rat(1), Rat(-1)});
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("unit chart equation matches the bimodal solution") {
    BifurcationEq eq = derive_bifurcation_eq_unit(2, 1, closed("c1 J2 c1"));
    REQUIRE(eq.Q.size() == 2);
    REQUIRE(eq.Q[1] == P({-1, 0, 1}));  // (lambda^2 - 1) b^1
    REQUIRE(eq.Q[0] == P({0, -2, 2}));  // = 2 lambda^2 - 2 lambda
    // at slope 2 the period-two offset is -1/3, i.e. interior offset 4/3
    REQUIRE(Rat(eq.Q[1].evaluate<Rat>(Rat(2))) * Rat(4, 3) == eq.Q[0].evaluate<Rat>(Rat(2)));
}

TEST_CASE("symbolic orbit wrappers and error paths") {
    auto orb = symbolic_orbit_bimodal({sym_c(1), sym_J(2)});
    REQUIRE(orb.w.size() == 2);
    REQUIRE(orb.w[1][0] == DyadicPoly::half(P({0, 1})));   // lambda / 2
    REQUIRE(orb.constant[1] == DyadicPoly::half(P({-2, 1})));

    REQUIRE_THROWS_AS(derive_bifurcation_eq(parse_itinerary("c1 J2 J0")), BadItinerary);
    REQUIRE_THROWS_AS(symbolic_orbit_unit(2, 1, {sym_J(0)}), BadItinerary);
    REQUIRE_THROWS_AS(symbolic_orbit_unit(2, 1, {sym_c(1), sym_c(2)}), BadItinerary);
    REQUIRE_THROWS_AS(symbolic_orbit_unit(2, 1, {sym_c(3)}), BadItinerary);
    REQUIRE_THROWS_AS(symbolic_orbit_unit(2, 1, {sym_c(1), sym_J(3)}), BadItinerary);
    REQUIRE_THROWS_AS(derive_bifurcation_eq_unit(2, 1, closed("c1 J2 c3")), BadItinerary);
}

TEST_CASE("expansion bound on the linear forms") {
    SECTION("failure below the bimodal threshold") {
        auto r = w_bound_check_bimodal({2, 1, 2, 0, 2}, Rat(6, 5), 10);
        REQUIRE_FALSE(r.pass);
        REQUIRE(r.first_failure == 3);
    }
    SECTION("bimodal region invariance above slope two") {
        std::mt19937_64 rng(55);
        for (int iter = 0; iter < 20; ++iter) {
            std::vector<int> syms;
            for (int i = 0; i < 12; ++i) syms.push_back((int)(rng() % 3));
            auto r = w_bound_check_bimodal(syms, Rat(5, 2), 60);
            REQUIRE(r.pass);
            REQUIRE(r.steps_checked == 59);
        }
    }
    SECTION("general bound above slope three") {
        std::mt19937_64 rng(56);
        for (int iter = 0; iter < 20; ++iter) {
            int l = 2 + (int)(rng() % 3);
            int i0 = 1 + (int)(rng() % l);
            std::vector<int> syms;
            for (int i = 0; i < 12; ++i) syms.push_back((int)(rng() % (l + 1)));
            auto r = w_bound_check_general(l, 1, i0, syms, Rat(7, 2), 60);
            REQUIRE(r.pass);
        }
        auto r = w_bound_check_general(2, -1, 2, {0, 1, 2, 2, 1}, Rat(10, 3), 40);
        REQUIRE(r.pass);
    }
    SECTION("algebraic slope") {
        AlgebraicNumber rt5(P({-5, 0, 1}), Rat(2), Rat(3));
        auto r = w_bound_check_bimodal({2, 1, 0, 1, 2, 1}, rt5, 8);
        REQUIRE(r.pass);
        AlgebraicNumber rt10(P({-10, 0, 1}), Rat(3), Rat(4));
        auto g = w_bound_check_general(3, 1, 2, {3, 1, 0, 2, 1}, rt10, 7);
        REQUIRE(g.pass);
    }
    SECTION("argument validation") {
        REQUIRE_THROWS_AS(w_bound_check_general(1, 1, 1, {0}, Rat(4), 5), std::invalid_argument);
        REQUIRE_THROWS_AS(w_bound_check_bimodal({}, Rat(4), 5), std::invalid_argument);
        REQUIRE_THROWS_AS(w_bound_check_bimodal({3}, Rat(4), 5), std::invalid_argument);
    }
}
