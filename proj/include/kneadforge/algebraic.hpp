#pragma once

#include "kneadforge/poly.hpp"
#include "kneadforge/roots.hpp"

#include <stdexcept>

namespace kneadforge {

// A real algebraic number: square-free primitive defining polynomial with
// positive leading coefficient, plus an isolating interval containing exactly
// one of its roots. Rational values collapse to a degenerate interval; all
// other enclosures keep a strict sign change at the endpoints.
struct AlgebraicNumber {
    IntPoly poly;
    RootInterval iv;

    AlgebraicNumber() : AlgebraicNumber(from_rational(0)) {}

    AlgebraicNumber(IntPoly p, Rat lo, Rat hi) {
        if (p.is_zero() || p.degree() < 1)
            throw std::invalid_argument("defining polynomial must be nonconstant");
        poly = primitive_part(square_free_part(p));
        if (poly.leading() < 0) poly = -poly;
        bool zlo = poly.evaluate<Rat>(lo) == 0;
        bool zhi = poly.evaluate<Rat>(hi) == 0;
        if (zlo && zhi && lo != hi)
            throw std::invalid_argument("enclosure has roots at both endpoints");
        if (zlo) { iv = {lo, lo}; return; }
        if (zhi) { iv = {hi, hi}; return; }
        if (!(lo < hi)) throw std::invalid_argument("empty enclosure");
        SturmChain chain(poly);
        if (chain.count_halfopen(lo, hi) != 1)
            throw std::invalid_argument("enclosure does not isolate a single root");
        int slo = sign_of(poly.evaluate<Rat>(lo));
        int shi = sign_of(poly.evaluate<Rat>(hi));
        if (slo == shi) {
            // one root inside but equal endpoint signs cannot happen for a
            // square-free polynomial with a simple interior root
            throw std::invalid_argument("enclosure endpoints do not bracket the root");
        }
        iv = {lo, hi};
    }

    static AlgebraicNumber from_rational(const Rat& r) {
        AlgebraicNumber a(no_check{});
        a.poly = IntPoly({-rat_num(r), rat_den(r)});
        a.iv = {r, r};
        return a;
    }

    bool is_rational() const { return iv.is_point(); }
    Rat rational_value() const {
        if (!is_rational()) throw std::logic_error("not a rational value");
        return iv.lo;
    }

    void refine_to(const Rat& eps) { iv = refine_root(poly, iv, eps); }

    Rat approx_rat(const Rat& eps) const {
        RootInterval r = refine_root(poly, iv, eps);
        return r.mid();
    }
    double approx() const {
        return rat_double(approx_rat(Rat(1, Int(1) << 48)));
    }

  private:
    struct no_check {};
    explicit AlgebraicNumber(no_check) {}
};

// Exact sign of f at the algebraic point. Zero is decided through the gcd with
// the defining polynomial; otherwise the enclosure is refined until f has no
// root inside and a single evaluation settles the sign.
inline int sign_at(const IntPoly& f, const AlgebraicNumber& a) {
    if (f.is_zero()) return 0;
    if (a.is_rational()) return sign_of(f.evaluate<Rat>(a.iv.lo));
    if (f.degree() == 0) return sign_of(f.leading());
    IntPoly g = poly_gcd(f, a.poly);
    if (g.degree() > 0) {
        SturmChain gch(g);
        if (gch.count_halfopen(a.iv.lo, a.iv.hi) > 0) return 0;
    }
    IntPoly fs = square_free_part(f);
    SturmChain fch(fs);
    RootInterval iv = a.iv;
    int slo = sign_of(a.poly.evaluate<Rat>(iv.lo));
    while (fch.count_halfopen(iv.lo, iv.hi) > 0) {
        Rat m = iv.mid();
        int sm = sign_of(a.poly.evaluate<Rat>(m));
        if (sm == 0) return sign_of(f.evaluate<Rat>(m));
        if (sm == slo) iv.lo = m; else iv.hi = m;
    }
    return sign_of(f.evaluate<Rat>(iv.hi));
}

inline int sign_at(const RatPoly& f, const AlgebraicNumber& a) {
    return sign_at(clear_denominators(f), a);
}

// sign of alpha - r
inline int cmp_rat(const AlgebraicNumber& a, const Rat& r) {
    IntPoly f({-rat_num(r), rat_den(r)});
    return sign_at(f, a);
}

inline int sign_at(const RatFunc& f, const AlgebraicNumber& a) {
    int sd = sign_at(f.den, a);
    if (sd == 0) throw std::domain_error("rational function pole at evaluation point");
    return sign_at(f.num, a) * sd;
}

// sign of f - g at alpha
inline int cmp_at(const RatFunc& f, const RatFunc& g, const AlgebraicNumber& a) {
    return sign_at(f - g, a);
}

// Closed rational interval arithmetic, used for certified approximation of
// polynomial and rational-function values at an algebraic point.
struct RatInterval {
    Rat lo, hi;
    static RatInterval point(const Rat& v) { return {v, v}; }
    Rat width() const { return hi - lo; }
    Rat mid() const { return (lo + hi) / 2; }
    bool contains_zero() const { return lo <= 0 && 0 <= hi; }

    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
    RatInterval operator*(const RatInterval& o) const {
        Rat a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        Rat mn = a, mx = a;
        for (const Rat& v : {b, c, d}) {
            if (v < mn) mn = v;
            if (v > mx) mx = v;
        }
        return {mn, mx};
    }
    RatInterval operator/(const RatInterval& o) const {
        if (o.contains_zero()) throw std::domain_error("interval division by zero");
        RatInterval inv{Rat(1) / o.hi, Rat(1) / o.lo};
        return *this * inv;
    }
};

template <class T>
inline RatInterval eval_interval(const BasicPoly<T>& p, const RatInterval& x) {
    RatInterval acc = RatInterval::point(0);
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it)
        acc = acc * x + RatInterval::point(Rat(*it));
    return acc;
}

// Enclosure of f(alpha) of width at most eps.
inline RatInterval enclose_at(const RatFunc& f, const AlgebraicNumber& a, const Rat& eps) {
    RootInterval iv = a.iv;
    Rat tol = a.is_rational() ? Rat(0) : iv.width();
    while (true) {
        RatInterval x{iv.lo, iv.hi};
        RatInterval d = eval_interval(f.den, x);
        if (!d.contains_zero()) {
            RatInterval v = eval_interval(f.num, x) / d;
            if (v.width() <= eps) return v;
        }
        if (a.is_rational())
            throw std::domain_error("rational function pole at evaluation point");
        tol /= 2;
        iv = refine_root(a.poly, iv, tol);
    }
}

inline double approx_at(const RatFunc& f, const AlgebraicNumber& a) {
    return rat_double(enclose_at(f, a, Rat(1, Int(1) << 48)).mid());
}

}  // namespace kneadforge
