#pragma once

#include "kneadforge/algebraic.hpp"
#include "kneadforge/poly.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kneadforge {

// Combinatorial data of a model space: interval count N, target map sigma,
// per-interval turning-point counts l and first-branch signs s. All interval
// indices are 1-based to match the usual notation.
struct CombData {
    int N = 1;
    std::vector<int> sigma;
    std::vector<int> l;
    std::vector<int> s;
};

struct MalformedSigma : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SpaceReport {
    bool valid = false;
    bool essential = false;
    bool cyclic = false;
    bool primitive = false;
    std::vector<std::string> problems;
};

// Branch i on interval k has slope (-1)^i s(k) lambda. The image interval of
// the leftmost branch endpoint is sigma(k)-1 or sigma(k) depending on whether
// that branch increases or decreases; same for the rightmost branch.
inline int sigma_l(const CombData& X, int k) {
    return X.s[k - 1] == 1 ? X.sigma[k - 1] - 1 : X.sigma[k - 1];
}
inline int sigma_r(const CombData& X, int k) {
    int last_sign = (X.l[k - 1] % 2 == 0) ? X.s[k - 1] : -X.s[k - 1];
    return last_sign == 1 ? X.sigma[k - 1] : X.sigma[k - 1] - 1;
}

inline SpaceReport validate_space(const CombData& X) {
    SpaceReport r;
    if (X.N < 1) { r.problems.push_back("N must be positive"); return r; }
    if ((int)X.sigma.size() != X.N || (int)X.l.size() != X.N || (int)X.s.size() != X.N) {
        r.problems.push_back("sigma, l, s must each have N entries");
        return r;
    }
    for (int v : X.sigma)
        if (v < 1 || v > X.N)
            throw MalformedSigma("sigma maps outside {1..N}");
    for (int v : X.l)
        if (v < 0) r.problems.push_back("l entries must be non-negative");
    for (int v : X.s)
        if (v != 1 && v != -1) r.problems.push_back("s entries must be +1 or -1");
    if (!r.problems.empty()) return r;
    r.valid = true;

    std::vector<bool> in_image(X.N + 1, false);
    for (int v : X.sigma) in_image[v] = true;
    r.essential = true;
    for (int k = 1; k <= X.N; ++k)
        if (!in_image[k] && X.l[k - 1] == 0) r.essential = false;

    // cyclic: sigma is a single N-cycle
    {
        std::vector<bool> seen(X.N + 1, false);
        int k = 1, steps = 0;
        while (!seen[k]) { seen[k] = true; k = X.sigma[k - 1]; ++steps; }
        r.cyclic = (steps == X.N && k == 1);
    }

    // primitive: a common interval is reachable from every k, i.e. the
    // functional graph of sigma has a unique terminal cycle
    {
        std::vector<int> cycle_id(X.N + 1, 0);
        int next_id = 0;
        for (int k0 = 1; k0 <= X.N; ++k0) {
            int k = k0;
            for (int i = 0; i <= X.N; ++i) k = X.sigma[k - 1];  // now on a cycle
            if (cycle_id[k] == 0) {
                ++next_id;
                int j = k;
                do { cycle_id[j] = next_id; j = X.sigma[j - 1]; } while (j != k);
            }
        }
        r.primitive = (next_id == 1);
    }
    return r;
}

// Boundary offsets fixed by the endpoint equations for a one-interval space
// on [0,1] with sigma = id: the first branch starts at a breakpoint and the
// last branch ends at one.
inline RatPoly unit_left_offset(int s) {
    return s == 1 ? RatPoly{} : RatPoly{Rat(1)};
}
inline RatPoly unit_right_offset(int s, int l) {
    int last_sign = (l % 2 == 0) ? s : -s;
    return last_sign == 1 ? RatPoly{Rat(1), Rat(-1)} : RatPoly{Rat(0), Rat(1)};
}

// A constant-slope piecewise-linear map on [0,1]: breakpoints a[0..N] and
// branch offsets b[k-1][i] as polynomials in the slope parameter.
struct PLMap {
    CombData comb;
    AlgebraicNumber lambda;
    std::vector<RatPoly> a;
    std::vector<std::vector<RatPoly>> b;
    bool collided = false;
};

struct Violation {
    std::string constraint;
    std::string detail;
};

struct FeasibilityResult {
    std::optional<PLMap> map;
    std::vector<Violation> violations;
    bool collided = false;
};

inline RatFunc lambda_func() { return RatFunc(IntPoly({0, 1}), IntPoly({1})); }

namespace detail {

inline RatFunc rf(const RatPoly& p) { return RatFunc::from_rat_polys(p, RatPoly{Rat(1)}); }

}  // namespace detail

// c_k^i = 1/2 (-1)^i s(k) lambda^{-1} (b_k^{i-1} - b_k^i), for i = 1..l(k)
inline RatFunc turning_point(const CombData& comb, const std::vector<std::vector<RatPoly>>& b,
                             int k, int i) {
    Rat coef = Rat(((i % 2 == 0) ? 1 : -1) * comb.s[k - 1], 2);
    RatPoly numerator = (b[k - 1][i - 1] - b[k - 1][i]).scaled(coef);
    return RatFunc::from_rat_polys(numerator, RatPoly{Rat(0), Rat(1)});
}
inline RatFunc turning_point(const PLMap& m, int k, int i) {
    return turning_point(m.comb, m.b, k, i);
}

// value at the turning point: 1/2 (b_k^{i-1} + b_k^i)
inline RatFunc turning_value(const PLMap& m, int k, int i) {
    return detail::rf((m.b[k - 1][i - 1] + m.b[k - 1][i]).scaled(Rat(1, 2)));
}

inline std::vector<RatFunc> turning_points(const PLMap& m) {
    std::vector<RatFunc> out;
    for (int k = 1; k <= m.comb.N; ++k)
        for (int i = 1; i <= m.comb.l[k - 1]; ++i) out.push_back(turning_point(m, k, i));
    return out;
}
inline std::vector<RatFunc> turning_values(const PLMap& m) {
    std::vector<RatFunc> out;
    for (int k = 1; k <= m.comb.N; ++k)
        for (int i = 1; i <= m.comb.l[k - 1]; ++i) out.push_back(turning_value(m, k, i));
    return out;
}

// Checks the full constraint list: turning-point ordering inside each
// interval, turning-value containment in the image interval, and the
// prescribed boundary values. eps > 0 switches the ordering constraints to
// the eps-separated strict form. Collisions (equal adjacent turning points)
// are allowed at eps = 0 and flagged.
inline FeasibilityResult feasibility(const CombData& comb, const AlgebraicNumber& lambda,
                                     std::vector<RatPoly> a, std::vector<std::vector<RatPoly>> b,
                                     const Rat& eps = Rat(0)) {
    FeasibilityResult res;
    SpaceReport sr = validate_space(comb);
    if (!sr.valid) {
        for (const auto& p : sr.problems) res.violations.push_back({"comb", p});
        return res;
    }
    if ((int)a.size() != comb.N + 1) {
        res.violations.push_back({"breakpoints", "need N+1 breakpoints"});
        return res;
    }
    for (int k = 1; k <= comb.N; ++k)
        if ((int)b[k - 1].size() != comb.l[k - 1] + 1) {
            res.violations.push_back({"offsets", "interval " + std::to_string(k) +
                                                     " needs l(k)+1 offsets"});
            return res;
        }
    if (cmp_rat(lambda, Rat(1)) <= 0)
        res.violations.push_back({"slope", "lambda must exceed 1"});

    auto le = [&](const RatFunc& x, const RatFunc& y, const Rat& gap) {
        // x + gap <= y
        return cmp_at(x + RatFunc::constant(gap), y, lambda) <= 0;
    };
    RatFunc lamf = lambda_func();

    if (!(a.front() == RatPoly{}) || !(a.back() == RatPoly{Rat(1)}))
        res.violations.push_back({"breakpoints", "a_0 must be 0 and a_N must be 1"});
    for (int k = 1; k <= comb.N; ++k)
        if (!le(detail::rf(a[k - 1]), detail::rf(a[k]), Rat(0)))
            res.violations.push_back({"breakpoints", "a_" + std::to_string(k - 1) +
                                                         " > a_" + std::to_string(k)});

    for (int k = 1; k <= comb.N; ++k) {
        int lk = comb.l[k - 1];
        // ordering: a_{k-1} <= c_k^1 <= ... <= c_k^l <= a_k
        RatFunc prev = detail::rf(a[k - 1]);
        for (int i = 1; i <= lk + 1; ++i) {
            RatFunc cur = (i <= lk) ? turning_point(comb, b, k, i) : detail::rf(a[k]);
            if (!le(prev, cur, eps))
                res.violations.push_back(
                    {"ordering", "interval " + std::to_string(k) + ", position " + std::to_string(i)});
            if (i >= 2 && i <= lk && cmp_at(prev, cur, lambda) == 0) res.collided = true;
            prev = cur;
        }
        // containment: a_{sigma(k)-1} <= (b^{i-1}+b^i)/2 <= a_{sigma(k)}
        int tk = comb.sigma[k - 1];
        for (int i = 1; i <= lk; ++i) {
            RatFunc v = detail::rf((b[k - 1][i - 1] + b[k - 1][i]).scaled(Rat(1, 2)));
            if (!le(detail::rf(a[tk - 1]), v, Rat(0)) || !le(v, detail::rf(a[tk]), Rat(0)))
                res.violations.push_back(
                    {"containment", "interval " + std::to_string(k) + ", turning " + std::to_string(i)});
        }
        // boundary: s(k) lambda a_{k-1} + b^0 = a_{sigma_l(k)}
        RatFunc left = lamf * detail::rf(a[k - 1]).scaled(Rat(comb.s[k - 1])) +
                       detail::rf(b[k - 1][0]);
        if (cmp_at(left, detail::rf(a[sigma_l(comb, k)]), lambda) != 0)
            res.violations.push_back({"boundary-left", "interval " + std::to_string(k)});
        int last_sign = (lk % 2 == 0) ? comb.s[k - 1] : -comb.s[k - 1];
        RatFunc right = lamf * detail::rf(a[k]).scaled(Rat(last_sign)) + detail::rf(b[k - 1][lk]);
        if (cmp_at(right, detail::rf(a[sigma_r(comb, k)]), lambda) != 0)
            res.violations.push_back({"boundary-right", "interval " + std::to_string(k)});
    }

    if (res.violations.empty()) {
        res.map = PLMap{comb, lambda, std::move(a), std::move(b), res.collided};
    }
    return res;
}

struct AmbiguousBranch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class TurningPolicy { Error, Value };

// One orbit entry: exact value, the branch that contains it (interval k and
// branch index i), and the turning index when the value sits exactly on a
// turning point.
struct OrbitPoint {
    RatFunc value;
    int interval_k = 1;
    int branch_i = 0;
    int turning = 0;
};

namespace detail {

struct PLLocation {
    int k;
    int i;
    int turning;  // 0 or the turning index within interval k
};

inline PLLocation pl_locate(const PLMap& m, const RatFunc& x) {
    int N = m.comb.N;
    if (cmp_at(x, rf(m.a[0]), m.lambda) < 0 || cmp_at(x, rf(m.a[N]), m.lambda) > 0)
        throw std::domain_error("point outside the domain");
    int k = 1;
    while (k < N && cmp_at(x, rf(m.a[k]), m.lambda) > 0) ++k;
    int lk = m.comb.l[k - 1];
    int i = 0;
    for (int j = 1; j <= lk; ++j) {
        int c = cmp_at(x, turning_point(m, k, j), m.lambda);
        if (c == 0) return {k, j, j};
        if (c > 0) i = j;
    }
    return {k, i, 0};
}

}  // namespace detail

// q(x) = (-1)^i s(k) lambda x + b_k^i on the branch containing x
inline OrbitPoint pl_evaluate(const PLMap& m, const RatFunc& x,
                              TurningPolicy policy = TurningPolicy::Value) {
    detail::PLLocation loc = detail::pl_locate(m, x);
    if (loc.turning != 0 && policy == TurningPolicy::Error)
        throw AmbiguousBranch("point is exactly a turning point");
    int sgn = ((loc.i % 2 == 0) ? 1 : -1) * m.comb.s[loc.k - 1];
    RatFunc v = lambda_func().scaled(Rat(sgn)) * x + detail::rf(m.b[loc.k - 1][loc.i]);
    return {v, loc.k, loc.i, loc.turning};
}

inline std::vector<OrbitPoint> pl_orbit(const PLMap& m, const RatFunc& x0, int n) {
    std::vector<OrbitPoint> out;
    RatFunc x = x0;
    for (int step = 0; step <= n; ++step) {
        detail::PLLocation loc = detail::pl_locate(m, x);
        OrbitPoint pt{x, loc.k, loc.i, loc.turning};
        out.push_back(pt);
        if (step == n) break;
        int sgn = ((loc.i % 2 == 0) ? 1 : -1) * m.comb.s[loc.k - 1];
        x = lambda_func().scaled(Rat(sgn)) * x + detail::rf(m.b[loc.k - 1][loc.i]);
    }
    return out;
}

// Normalized bimodal family on [-a, a], a = 1/(lambda-1): branches
// lambda x + 1, -lambda x + b, lambda x - 1 with turning points
// c^1 = (b-1)/(2 lambda) and c^2 = (b+1)/(2 lambda).
struct BimodalMap {
    AlgebraicNumber lambda;
    Rat b;
};

struct BimodalCheck {
    bool feasible = false;
    std::vector<Violation> violations;
};

inline BimodalCheck bimodal_feasible(const BimodalMap& m) {
    BimodalCheck r;
    if (cmp_rat(m.lambda, Rat(1)) <= 0)
        r.violations.push_back({"slope", "lambda must exceed 1"});
    else if (cmp_rat(m.lambda, Rat(3)) > 0)
        r.violations.push_back({"slope", "lambda must be at most 3"});
    if (r.violations.empty()) {
        // |b| (lambda-1) <= 3 - lambda
        Rat ab = rat_abs(m.b);
        RatPoly lhs{-(ab + 3), ab + 1};
        if (sign_at(lhs, m.lambda) > 0)
            r.violations.push_back({"offset", "|b| exceeds (3-lambda)/(lambda-1)"});
    }
    r.feasible = r.violations.empty();
    return r;
}

inline RatFunc bm_halfwidth(const BimodalMap& m) {
    (void)m;
    return RatFunc(IntPoly({1}), IntPoly({-1, 1}));
}
inline RatFunc bm_turning_point(const BimodalMap& m, int i) {
    Rat c = (i == 1) ? Rat(m.b - 1) : Rat(m.b + 1);
    return RatFunc(IntPoly({rat_num(c)}), IntPoly({0, 2 * rat_den(c)}));
}
inline RatFunc bm_turning_value(const BimodalMap& m, int i) {
    Rat v = ((i == 1) ? Rat(m.b + 1) : Rat(m.b - 1)) / 2;
    return RatFunc::constant(v);
}

// Same map carried to [0,1] by the affine change x -> (x+a)/(2a).
inline PLMap bimodal_to_unit(const BimodalMap& m) {
    PLMap out;
    out.comb = CombData{1, {1}, {2}, {1}};
    out.lambda = m.lambda;
    out.a = {RatPoly{}, RatPoly{Rat(1)}};
    RatPoly middle{(1 - m.b) / 2, (1 + m.b) / 2};
    out.b = {{unit_left_offset(1), middle, unit_right_offset(1, 2)}};
    return out;
}

namespace detail {

// Orbit engine for the bimodal chart. Every value is kept as
// num / (D2 * scale * L) with a fixed integer D2 = 2 * den(b) * den(x0), so
// each step is integer polynomial arithmetic and comparisons reduce to one
// sign evaluation. At an algebraic slope, num is pseudo-reduced modulo the
// defining polynomial after every step (scale absorbs the leading
// coefficients), which keeps its degree below the slope's degree.
struct BmOrbitEngine {
    const AlgebraicNumber* lam;
    Int D2;
    Int scale = 1;
    IntPoly num, nc1, nc2;

    static BmOrbitEngine seeded(const BimodalMap& m, const Rat& x0) {
        BmOrbitEngine e;
        e.init(m, rat_den(x0));
        e.num = IntPoly({0, 2 * rat_den(m.b) * rat_num(x0)});
        return e;
    }
    static BmOrbitEngine at_turning(const BimodalMap& m, int i) {
        BmOrbitEngine e;
        e.init(m, Int(1));
        e.num = (i == 1) ? e.nc1 : e.nc2;
        return e;
    }

    void init(const BimodalMap& m, const Int& t) {
        lam = &m.lambda;
        Int p = rat_num(m.b), q = rat_den(m.b);
        D2 = 2 * q * t;
        nc1 = IntPoly({(p - q) * t});
        nc2 = IntPoly({(p + q) * t});
        boff = IntPoly({0, 2 * p * t});
        den = IntPoly({0, D2});
        if (!m.lambda.is_rational()) modp = &m.lambda.poly;
    }

    // sign of value - c^i / value -+ a
    int cmp_c(int i) const {
        return sign_at(num - (i == 1 ? nc1 : nc2).scaled(scale), *lam);
    }
    int cmp_plus_a() const {
        return sign_at(num * IntPoly({-1, 1}) - IntPoly({0, D2 * scale}), *lam);
    }
    int cmp_minus_a() const {
        return sign_at(num * IntPoly({-1, 1}) + IntPoly({0, D2 * scale}), *lam);
    }

    struct Loc { int branch; int turning; };
    Loc locate() const {
        int s1 = cmp_c(1);
        if (s1 < 0) return {0, 0};
        if (s1 == 0) return {1, 1};
        int s2 = cmp_c(2);
        if (s2 < 0) return {1, 0};
        if (s2 == 0) return {2, 2};
        return {2, 0};
    }

    void step(int branch) {
        IntPoly up = num.shifted_up(1);
        if (branch == 0) num = up + den.scaled(scale);
        else if (branch == 1) num = -up + boff.scaled(scale);
        else num = up - den.scaled(scale);
        reduce();
    }

    RatFunc value() const { return RatFunc(num, den.scaled(scale)); }

  private:
    IntPoly boff, den;
    const IntPoly* modp = nullptr;

    void reduce() {
        if (!modp) return;
        const IntPoly& mp = *modp;
        while (!num.is_zero() && num.degree() >= mp.degree()) {
            size_t k = num.degree() - mp.degree();
            Int top = num.leading();
            num = num.scaled(mp.leading()) - mp.shifted_up(k).scaled(top);
            scale *= mp.leading();
        }
        if (scale > 1) {
            Int g = scale;
            for (const auto& coef : num.c) {
                g = boost::multiprecision::gcd(g, coef);
                if (g == 1) break;
            }
            if (g > 1) {
                for (auto& coef : num.c) coef /= g;
                scale /= g;
            }
        }
    }
};

inline std::vector<OrbitPoint> bm_run(BmOrbitEngine e, int n) {
    if (e.cmp_minus_a() < 0 || e.cmp_plus_a() > 0)
        throw std::domain_error("point outside the domain");
    std::vector<OrbitPoint> out;
    out.reserve(n + 1);
    for (int step = 0; step <= n; ++step) {
        auto loc = e.locate();
        out.push_back({e.value(), 1, loc.branch, loc.turning});
        if (step == n) break;
        e.step(loc.branch);
    }
    return out;
}

}  // namespace detail

inline std::vector<OrbitPoint> bm_orbit(const BimodalMap& m, const Rat& x0, int n) {
    return detail::bm_run(detail::BmOrbitEngine::seeded(m, x0), n);
}
inline std::vector<OrbitPoint> bm_turning_orbit(const BimodalMap& m, int i, int n) {
    return detail::bm_run(detail::BmOrbitEngine::at_turning(m, i), n);
}

// Single exact evaluation; works for any exact point, including values that
// are irrational in lambda.
inline RatFunc bm_evaluate(const BimodalMap& m, const RatFunc& x,
                           TurningPolicy policy = TurningPolicy::Value) {
    RatFunc lamf = lambda_func();
    int s1 = cmp_at(x, bm_turning_point(m, 1), m.lambda);
    int s2 = cmp_at(x, bm_turning_point(m, 2), m.lambda);
    if ((s1 == 0 || s2 == 0) && policy == TurningPolicy::Error)
        throw AmbiguousBranch("point is exactly a turning point");
    if (s1 < 0) return lamf * x + RatFunc::constant(Rat(1));
    if (s2 > 0) return lamf * x - RatFunc::constant(Rat(1));
    return -(lamf * x) + RatFunc::constant(m.b);
}

}  // namespace kneadforge
