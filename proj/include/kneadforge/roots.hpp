#pragma once

#include "kneadforge/poly.hpp"

#include <utility>
#include <vector>

namespace kneadforge {

// Sturm sequence of a square-free integer polynomial. Remainders are cleared
// to primitive integer polynomials; only positive factors are dropped, so the
// sign pattern is preserved.
struct SturmChain {
    std::vector<IntPoly> seq;

    explicit SturmChain(const IntPoly& p) {
        if (p.is_zero()) return;
        seq.push_back(p);
        IntPoly d = p.derivative();
        if (d.is_zero()) return;
        seq.push_back(d);
        while (true) {
            const IntPoly& a = seq[seq.size() - 2];
            const IntPoly& b = seq.back();
            auto [q, r] = poly_divmod(to_rat_poly(a), to_rat_poly(b));
            if (r.is_zero()) break;
            IntPoly nr = primitive_part(clear_denominators(r));
            seq.push_back(-nr);
            if (seq.back().degree() == 0) break;
        }
    }

    int variations_at(const Rat& x) const {
        int count = 0, prev = 0;
        for (const auto& p : seq) {
            int s = sign_of(p.evaluate<Rat>(x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    }

    // number of distinct real roots in (lo, hi]
    int count_halfopen(const Rat& lo, const Rat& hi) const {
        if (!(lo < hi)) return 0;
        return variations_at(lo) - variations_at(hi);
    }
};

// Isolating interval for one real root: either degenerate [lo,lo] at an exact
// rational root, or lo < hi with a strict sign change of the square-free part.
struct RootInterval {
    Rat lo, hi;
    bool is_point() const { return lo == hi; }
    Rat mid() const { return (lo + hi) / 2; }
    Rat width() const { return hi - lo; }
};

namespace detail {

// Divisors of |n| by trial division; false when n is too large to enumerate.
inline bool small_divisors(Int n, std::vector<Int>& out) {
    n = int_abs(n);
    if (n == 0 || n > 1000000000) return false;
    for (Int d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            if (d * d != n) out.push_back(n / d);
        }
    }
    return true;
}

// Rational roots of q found by the rational root test. Incomplete (empty) when
// the coefficients are too large for divisor enumeration; always verified by
// exact evaluation, so no false positives.
inline std::vector<Rat> rational_roots(const IntPoly& q) {
    std::vector<Rat> out;
    if (q.is_zero() || q.degree() < 1) return out;
    size_t low = 0;
    while (q.c[low] == 0) ++low;
    if (low > 0) out.emplace_back(0);
    std::vector<Int> num_div, den_div;
    if (!small_divisors(q.c[low], num_div) || !small_divisors(q.leading(), den_div))
        return out;
    for (const Int& p : num_div)
        for (const Int& s : den_div) {
            Rat r(p, s);
            if (q.evaluate<Rat>(r) == 0) out.push_back(r);
            if (q.evaluate<Rat>(-r) == 0) out.push_back(-r);
        }
    return out;
}

inline void isolate_rec(const IntPoly& q, const SturmChain& chain, Rat lo, Rat hi,
                        std::vector<RootInterval>& out) {
    int n = chain.count_halfopen(lo, hi);
    if (n == 0) return;
    if (n == 1) {
        while (true) {
            if (q.evaluate<Rat>(hi) == 0) { out.push_back({hi, hi}); return; }
            int slo = sign_of(q.evaluate<Rat>(lo));
            int shi = sign_of(q.evaluate<Rat>(hi));
            if (slo != 0 && shi != 0 && slo != shi) { out.push_back({lo, hi}); return; }
            Rat m = (lo + hi) / 2;
            if (q.evaluate<Rat>(m) == 0) { out.push_back({m, m}); return; }
            if (chain.count_halfopen(lo, m) == 1) hi = m; else lo = m;
        }
    }
    Rat m = (lo + hi) / 2;
    isolate_rec(q, chain, lo, m, out);
    isolate_rec(q, chain, m, hi, out);
}

}  // namespace detail

// Sorted isolating intervals for the distinct real roots of p in (lo, hi].
inline std::vector<RootInterval> isolate_real_roots(const IntPoly& p, const Rat& lo, const Rat& hi) {
    std::vector<RootInterval> out;
    if (p.is_zero()) throw std::invalid_argument("root isolation of the zero polynomial");
    if (p.degree() == 0 || !(lo < hi)) return out;
    IntPoly q = square_free_part(p);
    SturmChain chain(q);
    detail::isolate_rec(q, chain, lo, hi, out);
    // collapse brackets around identified rational roots to exact points
    std::vector<Rat> rr = detail::rational_roots(q);
    for (auto& iv : out) {
        if (iv.is_point()) continue;
        for (const Rat& r : rr)
            if (iv.lo < r && r < iv.hi) { iv = {r, r}; break; }
    }
    return out;
}

// Shrinks the enclosure by bisection until width <= eps; keeps the invariant
// (degenerate point or strict sign change of q at the endpoints).
inline RootInterval refine_root(const IntPoly& q, RootInterval iv, const Rat& eps) {
    if (iv.is_point()) return iv;
    int slo = sign_of(q.evaluate<Rat>(iv.lo));
    while (iv.width() > eps) {
        Rat m = iv.mid();
        int sm = sign_of(q.evaluate<Rat>(m));
        if (sm == 0) return {m, m};
        if (sm == slo) iv.lo = m; else iv.hi = m;
    }
    return iv;
}

}  // namespace kneadforge
