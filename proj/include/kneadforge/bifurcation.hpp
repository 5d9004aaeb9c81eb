#pragma once

#include "kneadforge/itinerary.hpp"

#include <string>
#include <vector>

namespace kneadforge {

enum class Chart { Bimodal, Unit };

// Linear forms of the iterated turning value: in the bimodal chart
// v_k = w[k-1][0] * b + constant[k-1]; in the unit chart
// v_k = sum_i w[k-1][i] * b^i with every offset formal and no constant.
struct LinearFormOrbit {
    Chart chart = Chart::Bimodal;
    std::vector<std::vector<DyadicPoly>> w;
    std::vector<DyadicPoly> constant;
};

inline LinearFormOrbit symbolic_orbit_bimodal(const std::vector<Symbol>& prefix) {
    BimodalForms f = bimodal_linear_forms(prefix);
    LinearFormOrbit out;
    out.chart = Chart::Bimodal;
    for (size_t k = 0; k < f.A.size(); ++k) {
        out.w.push_back({f.A[k]});
        out.constant.push_back(f.B[k]);
    }
    return out;
}

// w^i_1 = 1/2 (delta^i_{i0-1} + delta^i_{i0});
// w^i_{k+1} = (-1)^{j_k} s lambda w^i_k + delta^i_{j_k}
inline LinearFormOrbit symbolic_orbit_unit(int l, int s, const std::vector<Symbol>& prefix) {
    if (l < 1 || (s != 1 && s != -1)) throw std::invalid_argument("need l >= 1 and s = +-1");
    if (prefix.empty() || !prefix[0].turning)
        throw BadItinerary("prefix must start at a turning point");
    int i0 = prefix[0].index;
    if (i0 < 1 || i0 > l) throw BadItinerary("turning index out of range");
    LinearFormOrbit out;
    out.chart = Chart::Unit;
    std::vector<DyadicPoly> w(l + 1);
    w[i0 - 1] = DyadicPoly::half(IntPoly({1}));
    w[i0] = w[i0] + DyadicPoly::half(IntPoly({1}));
    out.w.push_back(w);
    out.constant.push_back(DyadicPoly{});
    for (size_t m = 1; m < prefix.size(); ++m) {
        if (prefix[m].turning)
            throw BadItinerary("interior symbols of the prefix must be intervals");
        int j = prefix[m].index;
        if (j < 0 || j > l) throw BadItinerary("interval index out of range");
        int sgn = ((j % 2 == 0) ? 1 : -1) * s;
        for (int i = 0; i <= l; ++i) {
            w[i] = w[i].shifted_up(1);
            if (sgn < 0) w[i] = -w[i];
        }
        w[j] = w[j] + DyadicPoly(IntPoly({1}));
        out.w.push_back(w);
        out.constant.push_back(DyadicPoly{});
    }
    return out;
}

// The polynomial identity characterizing a turning point returning to a
// turning point along I: sum_{i>=1} Q[i](lambda) b^i = Q[0](lambda). Raw
// coefficients; reduce() removes the common polynomial factor and content.
struct BifurcationEq {
    Itinerary itinerary;
    Chart chart = Chart::Bimodal;
    std::vector<IntPoly> Q;
    bool reduced = false;
    int cleared_pow2 = 0;
};

namespace detail {

// dyadic -> integer polynomial, accumulating the cleared power of two
inline IntPoly clear_dyadic(const DyadicPoly& d, int& pow2) {
    if ((int)d.shift > pow2) pow2 = d.shift;
    return d.num;
}

inline void normalize_eq_signs(std::vector<IntPoly>& Q) {
    for (size_t i = 1; i < Q.size(); ++i)
        if (!Q[i].is_zero()) {
            if (Q[i].leading() < 0)
                for (auto& p : Q) p = -p;
            return;
        }
    if (!Q[0].is_zero() && Q[0].leading() < 0)
        for (auto& p : Q) p = -p;
}

}  // namespace detail

// Bimodal chart, single unknown b: (2 lambda A_n - 1) b = e_j - 2 lambda B_n
// with e_1 = -1, e_2 = +1; sign-normalized so the b-side has positive leading
// coefficient.
inline BifurcationEq derive_bifurcation_eq(const Itinerary& I) {
    int n = I.length() - 1;
    if (n < 1 || !I.symbols.back().turning)
        throw BadItinerary("bifurcation itinerary must end at a turning point");
    std::vector<Symbol> prefix(I.symbols.begin(), I.symbols.end() - 1);
    BimodalForms f = bimodal_linear_forms(prefix);
    int j = I.symbols.back().index;
    if (j != 1 && j != 2) throw BadItinerary("turning index out of range");

    BifurcationEq eq;
    eq.itinerary = I;
    eq.chart = Chart::Bimodal;
    DyadicPoly q1 = f.A[n - 1].shifted_up(1) * DyadicPoly(IntPoly({2})) - DyadicPoly(IntPoly({1}));
    DyadicPoly q0 = DyadicPoly(IntPoly({j == 1 ? -1 : 1})) -
                    f.B[n - 1].shifted_up(1) * DyadicPoly(IntPoly({2}));
    int pow2 = 0;
    IntPoly Q1 = detail::clear_dyadic(q1, pow2);
    IntPoly Q0 = detail::clear_dyadic(q0, pow2);
    if (q1.shift < (unsigned)pow2) Q1 = Q1.scaled(Int(1) << (pow2 - q1.shift));
    if (q0.shift < (unsigned)pow2) Q0 = Q0.scaled(Int(1) << (pow2 - q0.shift));
    eq.Q = {Q0, Q1};
    eq.cleared_pow2 = pow2;
    detail::normalize_eq_signs(eq.Q);
    return eq;
}

// Unit chart with boundary offsets substituted: the free unknowns are
// b^1..b^{l-1}.
inline BifurcationEq derive_bifurcation_eq_unit(int l, int s, const Itinerary& I) {
    int n = I.length() - 1;
    if (n < 1 || !I.symbols.back().turning)
        throw BadItinerary("bifurcation itinerary must end at a turning point");
    std::vector<Symbol> prefix(I.symbols.begin(), I.symbols.end() - 1);
    LinearFormOrbit orb = symbolic_orbit_unit(l, s, prefix);
    int i1 = I.symbols.back().index;
    if (i1 < 1 || i1 > l) throw BadItinerary("turning index out of range");

    // 2 lambda sum_i w^i b^i = (-1)^{i1} s (b^{i1-1} - b^{i1})
    int rs = ((i1 % 2 == 0) ? 1 : -1) * s;
    std::vector<DyadicPoly> C(l + 1);
    for (int i = 0; i <= l; ++i) {
        C[i] = orb.w[n - 1][i].shifted_up(1) * DyadicPoly(IntPoly({2}));
        int d = (i == i1 - 1) ? rs : (i == i1) ? -rs : 0;
        if (d != 0) C[i] = C[i] - DyadicPoly(IntPoly({d}));
    }
    int pow2 = 0;
    std::vector<IntPoly> ci(l + 1);
    for (int i = 0; i <= l; ++i) ci[i] = detail::clear_dyadic(C[i], pow2);
    for (int i = 0; i <= l; ++i)
        if (C[i].shift < (unsigned)pow2) ci[i] = ci[i].scaled(Int(1) << (pow2 - C[i].shift));

    // move the fixed boundary offsets to the constant side
    IntPoly beta0 = clear_denominators(unit_left_offset(s));
    IntPoly betal = clear_denominators(unit_right_offset(s, l));
    BifurcationEq eq;
    eq.itinerary = I;
    eq.chart = Chart::Unit;
    eq.cleared_pow2 = pow2;
    eq.Q.resize(l);
    eq.Q[0] = -(ci[0] * beta0) - (ci[l] * betal);
    for (int i = 1; i < l; ++i) eq.Q[i] = ci[i];
    detail::normalize_eq_signs(eq.Q);
    return eq;
}

// Removes the common polynomial factor and integer content across all Q.
inline BifurcationEq reduce(const BifurcationEq& eq) {
    BifurcationEq out = eq;
    out.reduced = true;
    IntPoly g;
    for (const auto& q : eq.Q) g = poly_gcd(g, q);
    if (!g.is_zero() && (g.degree() > 0 || g.leading() != 1))
        for (auto& q : out.Q) q = divide_exact(q, g);
    Int c = 0;
    for (const auto& q : out.Q) c = boost::multiprecision::gcd(c, poly_content(q));
    if (c > 1)
        for (auto& q : out.Q)
            for (auto& x : q.c) x /= c;
    detail::normalize_eq_signs(out.Q);
    return out;
}

// Coefficient laws for raw bimodal equations, alpha from the b-side and beta
// from the constant side, after normalizing the overall sign so beta_n = +1:
// periodic first turning point: alpha_n = -1, alpha_0 = beta_0 = +-1 jointly;
// second-turning-point cases: alpha_n = +1, alpha_0 and beta_0 = +-1
// independently; in both: middle coefficients lie in {-2, 0, 2} and
// |alpha_i| + |beta_i| = 2.
struct StructureReport {
    bool pass = true;
    std::string first_violation;
    bool joint_sign_deviation = false;  // soft: alpha_0 != beta_0 in the periodic case
};

inline StructureReport coefficient_structure_check(const BifurcationEq& eq, int kind) {
    if (eq.chart != Chart::Bimodal || eq.reduced || eq.Q.size() != 2)
        throw std::invalid_argument("structure laws apply to raw bimodal equations");
    StructureReport r;
    auto fail = [&](const std::string& why) {
        if (r.pass) { r.pass = false; r.first_violation = why; }
    };
    const IntPoly& Q0 = eq.Q[0];
    const IntPoly& Q1 = eq.Q[1];
    if (Q0.is_zero() || Q1.is_zero()) { fail("zero polynomial"); return r; }
    if (Q0.degree() != Q1.degree()) { fail("degrees differ"); return r; }
    int n = Q0.degree();
    int flip = Q0.leading() > 0 ? 1 : -1;  // make beta_n = +1
    auto alpha = [&](int i) { return Int(flip * Q1.at(i)); };
    auto beta = [&](int i) { return Int(flip * Q0.at(i)); };
    if (beta(n) != 1) fail("leading beta is not +-1");
    if (kind == 1) {
        if (alpha(n) != -1) fail("leading alpha is not -1");
        if (int_abs(alpha(0)) != 1 || int_abs(beta(0)) != 1) fail("constant term is not +-1");
        if (alpha(0) != beta(0)) r.joint_sign_deviation = true;
    } else {
        if (alpha(n) != 1) fail("leading alpha is not +1");
        if (int_abs(alpha(0)) != 1 || int_abs(beta(0)) != 1) fail("constant term is not +-1");
    }
    for (int i = 1; i < n; ++i) {
        Int a = int_abs(alpha(i)), b = int_abs(beta(i));
        if (a != 0 && a != 2) fail("middle alpha outside {-2,0,2} at degree " + std::to_string(i));
        if (b != 0 && b != 2) fail("middle beta outside {-2,0,2} at degree " + std::to_string(i));
        if (a + b != 2) fail("|alpha|+|beta| != 2 at degree " + std::to_string(i));
    }
    return r;
}

// Step-by-step verification of the expansion bound on the w-recursion.
struct WBoundReport {
    bool pass = true;
    int first_failure = -1;  // k index of the first violated bound
    int steps_checked = 0;
};

namespace detail {

inline int sym_cycle(const std::vector<int>& symbols, int idx) {
    return symbols[idx % symbols.size()];
}

}  // namespace detail

// |w^i^_k| > 1/2 for 2 <= k <= k_max, on the line of the distinguished index
// i^ (the start index clamped away from {0, l}); valid for slopes above 3.
inline WBoundReport w_bound_check_general(int l, int s, int i0, const std::vector<int>& symbols,
                                          const Rat& lambda, int k_max) {
    if (l < 2) throw std::invalid_argument("distinguished index needs l >= 2");
    if (i0 < 1 || i0 > l) throw std::invalid_argument("start turning index out of range");
    if (symbols.empty()) throw std::invalid_argument("empty symbol sequence");
    int ihat = (i0 <= l - 1) ? i0 : l - 1;
    WBoundReport r;
    Rat w(1, 2);
    for (int k = 2; k <= k_max; ++k) {
        int j = detail::sym_cycle(symbols, k - 2);
        if (j < 0 || j > l) throw std::invalid_argument("interval symbol out of range");
        int sgn = ((j % 2 == 0) ? 1 : -1) * s;
        w = Rat(sgn) * lambda * w;
        if (j == ihat) w += 1;
        ++r.steps_checked;
        if (!(rat_abs(w) > Rat(1, 2))) {
            r.pass = false;
            r.first_failure = k;
            break;
        }
    }
    return r;
}

// Bimodal sharpening for s = +1: starting from w_1 = 1/2, each step must land
// in (-inf, 0) u (1/2, inf); valid for slopes above 2.
inline WBoundReport w_bound_check_bimodal(const std::vector<int>& symbols, const Rat& lambda,
                                          int k_max) {
    if (symbols.empty()) throw std::invalid_argument("empty symbol sequence");
    WBoundReport r;
    Rat w(1, 2);
    for (int k = 2; k <= k_max; ++k) {
        int j = detail::sym_cycle(symbols, k - 2);
        if (j < 0 || j > 2) throw std::invalid_argument("interval symbol out of range");
        w = (j == 1) ? Rat(1 - lambda * w) : Rat(lambda * w);
        ++r.steps_checked;
        if (!(w < 0 || w > Rat(1, 2))) {
            r.pass = false;
            r.first_failure = k;
            break;
        }
    }
    return r;
}

inline WBoundReport w_bound_check_general(int l, int s, int i0, const std::vector<int>& symbols,
                                          const AlgebraicNumber& lambda, int k_max) {
    if (lambda.is_rational())
        return w_bound_check_general(l, s, i0, symbols, lambda.rational_value(), k_max);
    if (l < 2) throw std::invalid_argument("distinguished index needs l >= 2");
    if (i0 < 1 || i0 > l) throw std::invalid_argument("start turning index out of range");
    if (symbols.empty()) throw std::invalid_argument("empty symbol sequence");
    int ihat = (i0 <= l - 1) ? i0 : l - 1;
    WBoundReport r;
    RatPoly w({Rat(1, 2)});
    const RatPoly half({Rat(1, 2)});
    for (int k = 2; k <= k_max; ++k) {
        int j = detail::sym_cycle(symbols, k - 2);
        if (j < 0 || j > l) throw std::invalid_argument("interval symbol out of range");
        int sgn = ((j % 2 == 0) ? 1 : -1) * s;
        w = w.shifted_up(1).scaled(Rat(sgn));
        if (j == ihat) w = w + RatPoly({Rat(1)});
        ++r.steps_checked;
        if (!(sign_at(w - half, lambda) > 0 || sign_at(w + half, lambda) < 0)) {
            r.pass = false;
            r.first_failure = k;
            break;
        }
    }
    return r;
}

inline WBoundReport w_bound_check_bimodal(const std::vector<int>& symbols,
                                          const AlgebraicNumber& lambda, int k_max) {
    if (lambda.is_rational())
        return w_bound_check_bimodal(symbols, lambda.rational_value(), k_max);
    if (symbols.empty()) throw std::invalid_argument("empty symbol sequence");
    WBoundReport r;
    RatPoly w({Rat(1, 2)});
    const RatPoly half({Rat(1, 2)});
    for (int k = 2; k <= k_max; ++k) {
        int j = detail::sym_cycle(symbols, k - 2);
        if (j < 0 || j > 2) throw std::invalid_argument("interval symbol out of range");
        w = (j == 1) ? RatPoly({Rat(1)}) - w.shifted_up(1) : w.shifted_up(1);
        ++r.steps_checked;
        if (!(sign_at(w, lambda) < 0 || sign_at(w - half, lambda) > 0)) {
            r.pass = false;
            r.first_failure = k;
            break;
        }
    }
    return r;
}

// Q1_0 Q2_1 - Q1_1 Q2_0: the two raw equations admit a common map exactly at
// the roots of this polynomial.
inline IntPoly eq11_residual(const BifurcationEq& eq1, const BifurcationEq& eq2) {
    if (eq1.chart != Chart::Bimodal || eq2.chart != Chart::Bimodal ||
        eq1.Q.size() != 2 || eq2.Q.size() != 2)
        throw std::invalid_argument("residual needs two bimodal single-unknown equations");
    return eq1.Q[0] * eq2.Q[1] - eq1.Q[1] * eq2.Q[0];
}

}  // namespace kneadforge
