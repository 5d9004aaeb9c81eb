#pragma once

#include "kneadforge/exceptional.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace kneadforge {

struct SingularAtLambda : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Codim1Report {
    std::vector<Itinerary> controlled;
    std::vector<std::vector<IntPoly>> matrix;  // [row j][col i-1] = Q^{(j)}_i
    IntPoly det;
    int det_sign = 0;                          // sign of det at lambda, never 0
    std::vector<RatFunc> curve;                // parameter curves R_i(lambda)
    AlgebraicNumber lambda;
    Rat window_lo, window_hi;                  // certified det != 0, sampled realization
    bool samples_verified = false;
    std::vector<Rat> sample_points;
};

namespace detail {

inline IntPoly poly_det(const std::vector<std::vector<IntPoly>>& a) {
    size_t n = a.size();
    if (n == 1) return a[0][0];
    IntPoly acc;
    for (size_t j = 0; j < n; ++j) {
        std::vector<std::vector<IntPoly>> minor;
        for (size_t r = 1; r < n; ++r) {
            std::vector<IntPoly> row;
            for (size_t c = 0; c < n; ++c)
                if (c != j) row.push_back(a[r][c]);
            minor.push_back(std::move(row));
        }
        IntPoly term = a[0][j] * poly_det(minor);
        acc = (j % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

// true when the curve point at rational slope ls lies in the certified
// realization interval of I
inline bool curve_point_realized(const Itinerary& I, const Rat& ls, const Rat& b) {
    RealizationInterval R = realization_interval(I, AlgebraicNumber::from_rational(ls));
    if (R.empty) return false;
    Rat lo = R.lo.evaluate(ls), hi = R.hi.evaluate(ls);
    if (b < lo || (b == lo && !R.lo_attained)) return false;
    if (b > hi || (b == hi && !R.hi_attained)) return false;
    return true;
}

}  // namespace detail

// Solves the linear system of the l-1 bifurcation equations for the free
// offsets by exact elimination; reports the solution curves together with a
// slope window on which the determinant is certifiably nonzero and the curve
// was re-verified at sample points.
inline Codim1Report codim1_analyze(int l, const std::vector<Itinerary>& controlled,
                                   const AlgebraicNumber& lambda, int s = 1) {
    if (l < 2) throw std::invalid_argument("need at least two laps");
    if ((int)controlled.size() != l - 1)
        throw std::invalid_argument("need exactly l-1 controlled itineraries");
    std::vector<int> starts;
    for (const auto& I : controlled) {
        if (I.length() < 2 || !I.symbols.front().turning || !I.symbols.back().turning)
            throw BadItinerary("controlled entries must be bifurcation itineraries");
        starts.push_back(I.symbols.front().index);
    }
    std::sort(starts.begin(), starts.end());
    if (std::adjacent_find(starts.begin(), starts.end()) != starts.end())
        throw std::invalid_argument("controlled itineraries must start at distinct turning points");

    Codim1Report rep;
    rep.controlled = controlled;
    rep.lambda = lambda;
    std::vector<BifurcationEq> eqs;
    for (const auto& I : controlled)
        eqs.push_back(l == 2 ? derive_bifurcation_eq(I) : derive_bifurcation_eq_unit(l, s, I));
    for (const auto& eq : eqs) {
        std::vector<IntPoly> row(eq.Q.begin() + 1, eq.Q.end());
        rep.matrix.push_back(row);
    }
    rep.det = detail::poly_det(rep.matrix);
    rep.det_sign = sign_at(rep.det, lambda);
    if (rep.det_sign == 0)
        throw SingularAtLambda("determinant vanishes at the given slope");

    // Cramer columns; residuals re-checked exactly
    for (int i = 1; i <= l - 1; ++i) {
        std::vector<std::vector<IntPoly>> replaced = rep.matrix;
        for (int j = 0; j < l - 1; ++j) replaced[j][i - 1] = eqs[j].Q[0];
        rep.curve.push_back(RatFunc(detail::poly_det(replaced), rep.det));
    }
    for (int j = 0; j < l - 1; ++j) {
        RatFunc acc = RatFunc::constant(Rat(0));
        for (int i = 1; i <= l - 1; ++i)
            acc = acc + RatFunc(eqs[j].Q[i], IntPoly({1})) * rep.curve[i - 1];
        acc = acc - RatFunc(eqs[j].Q[0], IntPoly({1}));
        if (!acc.is_zero())
            throw std::logic_error("curve does not satisfy the bifurcation equations");
    }

    // certified zero-free slope window around lambda
    Rat cap(3);
    if (l > 2) {
        // Cauchy bound: no roots beyond 1 + max |c_i| / |lead|
        Rat mx(0);
        for (const auto& c : rep.det.c) {
            Rat a = rat_abs(Rat(c));
            if (a > mx) mx = a;
        }
        cap = 1 + mx / rat_abs(Rat(rep.det.leading()));
        if (cap < 3) cap = 3;
    }
    AlgebraicNumber lam = lambda;
    lam.refine_to(Rat(1, 1 << 20));
    Rat lo(1), hi = cap;
    for (const RootInterval& ri : isolate_real_roots(rep.det, Rat(1), cap)) {
        AlgebraicNumber root(rep.det, ri.lo, ri.hi);
        while (!(root.iv.hi < lam.iv.lo || root.iv.lo > lam.iv.hi)) {
            if (!root.iv.is_point()) root.refine_to(root.iv.width() / 4);
            if (!lam.iv.is_point()) lam.refine_to(lam.iv.width() / 4);
        }
        if (root.iv.hi < lam.iv.lo) {
            if (root.iv.hi > lo) lo = root.iv.hi;
        } else if (root.iv.lo < hi) {
            hi = root.iv.lo;
        }
    }

    // realization spot checks at the midpoints of each half-window (bimodal)
    rep.samples_verified = l == 2;
    if (l == 2) {
        for (int side = 0; side < 2; ++side) {
            Rat* edge = side == 0 ? &lo : &hi;
            for (int round = 0; round < 8; ++round) {
                Rat mid = side == 0 ? (*edge + lam.iv.lo) / 2 : (lam.iv.hi + *edge) / 2;
                if (mid <= 1) { rep.samples_verified = false; break; }
                Rat b = rep.curve[0].evaluate(mid);
                if (detail::curve_point_realized(controlled[0], mid, b)) {
                    rep.sample_points.push_back(mid);
                    break;
                }
                *edge = mid;
                if (round == 7) rep.samples_verified = false;
            }
        }
    }
    rep.window_lo = lo;
    rep.window_hi = hi;
    return rep;
}

enum class Obstruction { Obstructed, NotDetermined };

struct ObstructionReport {
    Obstruction verdict = Obstruction::NotDetermined;
    std::string reason;
    int controlled_index = 0;       // turning point certified ordinary
    int remaining_index = 0;
    bool remaining_returns = false; // remaining point hits a turning point
    int remaining_return_step = -1;
    std::vector<Classification> classifications;  // per turning index 1..2
    std::optional<Codim1Report> codim1;
};

// Certificate that the map carries an ordinary codimension-one structure:
// one turning point with a controlled ordinary return, plus the recorded
// fate of the other. Without such a structure nothing is claimed.
inline ObstructionReport hyperbolic_approx_obstruction(const BimodalMap& m, int horizon) {
    ObstructionReport rep;
    for (int c : {1, 2}) rep.classifications.push_back(classify_turning_point(m, c, horizon));

    int ord = -1;
    for (int c : {1, 2})
        if (rep.classifications[c - 1].kind == TurningClass::Ordinary) { ord = c; break; }
    if (ord < 0) {
        bool exceptional = false, controlled = false;
        for (const auto& cl : rep.classifications) {
            if (cl.kind == TurningClass::Exceptional) exceptional = true;
            if (cl.kind != TurningClass::NotControlled) controlled = true;
        }
        rep.reason = exceptional ? "controlled turning point is exceptional"
                     : controlled ? "no ordinary controlled turning point"
                                  : "no controlled turning points within horizon";
        return rep;
    }

    rep.verdict = Obstruction::Obstructed;
    rep.controlled_index = ord;
    rep.remaining_index = 3 - ord;
    const Classification& rest = rep.classifications[rep.remaining_index - 1];
    rep.remaining_returns = rest.kind != TurningClass::NotControlled;
    rep.remaining_return_step = rest.return_step;
    rep.reason = rep.remaining_returns
                     ? "ordinary controlled return; remaining turning point falls onto a "
                       "turning point at step " + std::to_string(rest.return_step)
                     : "ordinary controlled return; remaining turning point avoids turning "
                       "points within horizon";
    rep.codim1 = codim1_analyze(2, {rep.classifications[ord - 1].itinerary}, m.lambda);
    return rep;
}

struct RenormReport {
    RatFunc lo, hi;             // candidate interval from the orbit recipe
    RatFunc image_lo, image_hi; // exact p-step image
    bool contains_center = false;
    bool maps_into = false;
    bool holds = false;
};

// Builds the candidate interval from the 2p-step orbit of the center
// ([q^2p, q^p] around the first turning point, mirrored for the second) and
// verifies exactly that the p-step image stays inside.
inline RenormReport renormalization_check(const BimodalMap& m, int center, int p) {
    if (center != 1 && center != 2) throw std::invalid_argument("center must be 1 or 2");
    if (p < 1) throw std::invalid_argument("period must be positive");
    auto orb = bm_turning_orbit(m, center, 2 * p);
    RenormReport rep;
    rep.lo = orb[2 * p].value;
    rep.hi = orb[p].value;
    if (center == 2) std::swap(rep.lo, rep.hi);
    if (cmp_at(rep.lo, rep.hi, m.lambda) > 0) std::swap(rep.lo, rep.hi);

    RatFunc c = bm_turning_point(m, center);
    rep.contains_center =
        cmp_at(rep.lo, c, m.lambda) <= 0 && cmp_at(c, rep.hi, m.lambda) <= 0;

    RatFunc ilo = rep.lo, ihi = rep.hi;
    for (int step = 0; step < p; ++step) {
        std::vector<RatFunc> cand{bm_evaluate(m, ilo), bm_evaluate(m, ihi)};
        for (int i : {1, 2}) {
            RatFunc tp = bm_turning_point(m, i);
            if (cmp_at(ilo, tp, m.lambda) <= 0 && cmp_at(tp, ihi, m.lambda) <= 0)
                cand.push_back(bm_turning_value(m, i));
        }
        ilo = cand[0];
        ihi = cand[0];
        for (const auto& x : cand) {
            if (cmp_at(x, ilo, m.lambda) < 0) ilo = x;
            if (cmp_at(x, ihi, m.lambda) > 0) ihi = x;
        }
    }
    rep.image_lo = ilo;
    rep.image_hi = ihi;
    rep.maps_into =
        cmp_at(rep.lo, ilo, m.lambda) <= 0 && cmp_at(ihi, rep.hi, m.lambda) <= 0;
    rep.holds = rep.contains_center && rep.maps_into;
    return rep;
}

struct NonrigidityReport {
    std::vector<Rat> grid;
    std::vector<std::string> itin1, itin2;  // formatted itineraries per offset
    bool constant1 = true, constant2 = true;
    int distinct1 = 0, distinct2 = 0;
};

// Itineraries of both turning points across an offset grid at fixed slope.
inline NonrigidityReport nonrigidity_scan(const AlgebraicNumber& lambda,
                                          const std::vector<Rat>& b_grid, int horizon) {
    if (b_grid.empty()) throw std::invalid_argument("empty offset grid");
    NonrigidityReport rep;
    rep.grid = b_grid;
    for (const Rat& b : b_grid) {
        BimodalMap m{lambda, b};
        if (!bimodal_feasible(m).feasible)
            throw std::invalid_argument("grid offset outside the feasible region");
        rep.itin1.push_back(format_itinerary(itinerary_of_turning(m, 1, horizon)));
        rep.itin2.push_back(format_itinerary(itinerary_of_turning(m, 2, horizon)));
    }
    auto tally = [](const std::vector<std::string>& v, bool& constant, int& distinct) {
        std::vector<std::string> u = v;
        std::sort(u.begin(), u.end());
        u.erase(std::unique(u.begin(), u.end()), u.end());
        distinct = (int)u.size();
        constant = distinct == 1;
    };
    tally(rep.itin1, rep.constant1, rep.distinct1);
    tally(rep.itin2, rep.constant2, rep.distinct2);
    return rep;
}

}  // namespace kneadforge
