#pragma once

#include "kneadforge/numeric.hpp"

#include <algorithm>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace kneadforge {

// Dense univariate polynomial, coefficients lowest degree first, trailing
// zeros trimmed. The indeterminate is the slope parameter throughout.
template <class T>
struct BasicPoly {
    std::vector<T> c;

    BasicPoly() = default;
    explicit BasicPoly(std::vector<T> coeffs) : c(std::move(coeffs)) { trim(); }
    BasicPoly(std::initializer_list<T> coeffs) : c(coeffs) { trim(); }

    static BasicPoly constant(T v) { return BasicPoly(std::vector<T>{std::move(v)}); }
    static BasicPoly monomial(size_t deg, T v) {
        std::vector<T> cs(deg + 1, T(0));
        cs[deg] = std::move(v);
        return BasicPoly(std::move(cs));
    }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const T& leading() const {
        if (c.empty()) throw std::logic_error("leading coefficient of zero polynomial");
        return c.back();
    }
    T at(size_t i) const { return i < c.size() ? c[i] : T(0); }

    bool operator==(const BasicPoly& o) const { return c == o.c; }
    bool operator!=(const BasicPoly& o) const { return !(*this == o); }

    BasicPoly operator-() const {
        BasicPoly r = *this;
        for (auto& x : r.c) x = -x;
        return r;
    }
    BasicPoly operator+(const BasicPoly& o) const {
        BasicPoly r;
        r.c.resize(std::max(c.size(), o.c.size()), T(0));
        for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
        for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
        r.trim();
        return r;
    }
    BasicPoly operator-(const BasicPoly& o) const { return *this + (-o); }
    BasicPoly operator*(const BasicPoly& o) const {
        if (is_zero() || o.is_zero()) return {};
        BasicPoly r;
        r.c.assign(c.size() + o.c.size() - 1, T(0));
        for (size_t i = 0; i < c.size(); ++i)
            for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
        r.trim();
        return r;
    }
    BasicPoly scaled(const T& k) const {
        if (k == 0) return {};
        BasicPoly r = *this;
        for (auto& x : r.c) x *= k;
        return r;
    }
    // multiply by x^k
    BasicPoly shifted_up(size_t k = 1) const {
        if (is_zero()) return {};
        BasicPoly r;
        r.c.assign(c.size() + k, T(0));
        std::copy(c.begin(), c.end(), r.c.begin() + k);
        return r;
    }
    BasicPoly derivative() const {
        if (c.size() <= 1) return {};
        BasicPoly r;
        r.c.resize(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r.c[i - 1] = c[i] * T(static_cast<long>(i));
        r.trim();
        return r;
    }
    template <class X>
    X evaluate(const X& x) const {
        X acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + X(*it);
        return acc;
    }
    // coefficients reversed: x^deg * p(1/x)
    BasicPoly reversed() const {
        BasicPoly r = *this;
        std::reverse(r.c.begin(), r.c.end());
        r.trim();
        return r;
    }
};

using IntPoly = BasicPoly<Int>;
using RatPoly = BasicPoly<Rat>;

inline RatPoly to_rat_poly(const IntPoly& p) {
    std::vector<Rat> cs(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) cs[i] = Rat(p.c[i]);
    return RatPoly(std::move(cs));
}

inline IntPoly int_poly_from(std::initializer_list<long> coeffs) {
    std::vector<Int> cs;
    for (long v : coeffs) cs.emplace_back(v);
    return IntPoly(std::move(cs));
}

inline Int poly_content(const IntPoly& p) {
    Int g = 0;
    for (const auto& x : p.c) g = boost::multiprecision::gcd(g, x);
    return g;  // 0 for the zero polynomial
}

inline IntPoly primitive_part(const IntPoly& p) {
    Int g = poly_content(p);
    if (g == 0 || g == 1) return p;
    IntPoly r = p;
    for (auto& x : r.c) x /= g;
    return r;
}

// Multiplies through by the lcm of denominators; exact, no content reduction.
inline IntPoly clear_denominators(const RatPoly& p, Int* multiplier = nullptr) {
    Int m = 1;
    for (const auto& x : p.c) m = boost::multiprecision::lcm(m, rat_den(x));
    IntPoly r;
    r.c.resize(p.c.size());
    for (size_t i = 0; i < p.c.size(); ++i) {
        Rat v = p.c[i] * Rat(m);
        r.c[i] = rat_num(v);
    }
    r.trim();
    if (multiplier) *multiplier = m;
    return r;
}

inline std::pair<RatPoly, RatPoly> poly_divmod(const RatPoly& num, const RatPoly& den) {
    if (den.is_zero()) throw std::invalid_argument("polynomial division by zero");
    RatPoly rem = num;
    RatPoly quo;
    if (num.degree() >= den.degree())
        quo.c.assign(num.degree() - den.degree() + 1, Rat(0));
    while (!rem.is_zero() && rem.degree() >= den.degree()) {
        size_t k = rem.degree() - den.degree();
        Rat f = rem.leading() / den.leading();
        quo.c[k] = f;
        rem = rem - den.shifted_up(k).scaled(f);
    }
    quo.trim();
    return {quo, rem};
}

struct NotDivisible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exact quotient num/den. Integer quotients are returned verbatim; exact but
// non-integer quotients are cleared to a primitive integer polynomial.
inline IntPoly divide_exact(const IntPoly& num, const IntPoly& den) {
    if (den.is_zero()) throw std::invalid_argument("divide_exact: zero divisor");
    auto [quo, rem] = poly_divmod(to_rat_poly(num), to_rat_poly(den));
    if (!rem.is_zero()) throw NotDivisible("polynomial division leaves a remainder");
    bool integral = true;
    for (const auto& x : quo.c)
        if (rat_den(x) != 1) { integral = false; break; }
    IntPoly q = clear_denominators(quo);
    return integral ? q : primitive_part(q);
}

// Gcd over the rationals, normalized to a primitive integer polynomial with
// positive leading coefficient.
inline IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
    RatPoly x = to_rat_poly(a), y = to_rat_poly(b);
    while (!y.is_zero()) {
        auto [q, r] = poly_divmod(x, y);
        x = y;
        y = r;
    }
    if (x.is_zero()) return {};
    IntPoly g = primitive_part(clear_denominators(x));
    if (g.leading() < 0) g = -g;
    return g;
}

inline IntPoly square_free_part(const IntPoly& p) {
    if (p.is_zero() || p.degree() == 0) return p;
    IntPoly g = poly_gcd(p, p.derivative());
    if (g.degree() == 0) return p;
    return divide_exact(p, g);
}

// Numerator over 2^shift; canonical form keeps the numerator content odd
// whenever shift > 0.
struct DyadicPoly {
    IntPoly num;
    unsigned shift = 0;

    DyadicPoly() = default;
    DyadicPoly(IntPoly n, unsigned s = 0) : num(std::move(n)), shift(s) { normalize(); }
    static DyadicPoly half(IntPoly n) { return DyadicPoly(std::move(n), 1); }

    void normalize() {
        if (num.is_zero()) { shift = 0; return; }
        while (shift > 0) {
            bool all_even = true;
            for (const auto& x : num.c)
                if (int_abs(x) % 2 != 0) { all_even = false; break; }
            if (!all_even) break;
            for (auto& x : num.c) x /= 2;
            --shift;
        }
    }

    bool is_zero() const { return num.is_zero(); }
    int degree() const { return num.degree(); }

    bool operator==(const DyadicPoly& o) const { return num == o.num && shift == o.shift; }

    DyadicPoly operator-() const { return DyadicPoly(-num, shift); }
    DyadicPoly operator+(const DyadicPoly& o) const {
        unsigned s = std::max(shift, o.shift);
        IntPoly a = num.scaled(Int(1) << (s - shift));
        IntPoly b = o.num.scaled(Int(1) << (s - o.shift));
        return DyadicPoly(a + b, s);
    }
    DyadicPoly operator-(const DyadicPoly& o) const { return *this + (-o); }
    DyadicPoly operator*(const DyadicPoly& o) const {
        return DyadicPoly(num * o.num, shift + o.shift);
    }
    DyadicPoly shifted_up(size_t k = 1) const { return DyadicPoly(num.shifted_up(k), shift); }

    Rat evaluate(const Rat& x) const {
        Rat v = num.evaluate<Rat>(x);
        return v / Rat(Int(1) << shift);
    }
    RatPoly to_rat_poly_form() const {
        RatPoly r = to_rat_poly(num);
        Rat d(Int(1) << shift);
        for (auto& x : r.c) x /= d;
        return r;
    }
};

// Reduced fraction of integer polynomials: primitive numerator/denominator,
// gcd constant, denominator leading coefficient positive.
struct RatFunc {
    IntPoly num;
    IntPoly den;

    RatFunc() : num(), den(IntPoly::constant(Int(1))) {}
    RatFunc(IntPoly n, IntPoly d) : num(std::move(n)), den(std::move(d)) { reduce(); }
    static RatFunc constant(const Rat& v) {
        return RatFunc(IntPoly::constant(rat_num(v)), IntPoly::constant(rat_den(v)));
    }
    static RatFunc from_rat_polys(const RatPoly& n, const RatPoly& d) {
        Int mn = 1, md = 1;
        IntPoly in = clear_denominators(n, &mn);
        IntPoly id = clear_denominators(d, &md);
        // n/d = (in/mn)/(id/md) = in*md / (id*mn)
        return RatFunc(in.scaled(md), id.scaled(mn));
    }

    void reduce() {
        if (den.is_zero()) throw std::invalid_argument("rational function with zero denominator");
        if (num.is_zero()) { den = IntPoly::constant(Int(1)); return; }
        IntPoly g = poly_gcd(num, den);
        if (g.degree() > 0 || g.leading() != 1) {
            num = divide_exact(num, g);
            den = divide_exact(den, g);
        }
        Int cn = poly_content(num), cd = poly_content(den);
        Int cg = boost::multiprecision::gcd(cn, cd);
        if (cg > 1) {
            for (auto& x : num.c) x /= cg;
            for (auto& x : den.c) x /= cg;
        }
        if (den.leading() < 0) { num = -num; den = -den; }
    }

    bool is_zero() const { return num.is_zero(); }
    bool operator==(const RatFunc& o) const { return num == o.num && den == o.den; }

    RatFunc operator-() const { RatFunc r = *this; r.num = -r.num; return r; }
    RatFunc scaled(const Rat& k) const {
        return RatFunc(num.scaled(rat_num(k)), den.scaled(rat_den(k)));
    }
    RatFunc operator+(const RatFunc& o) const { return RatFunc(num * o.den + o.num * den, den * o.den); }
    RatFunc operator-(const RatFunc& o) const { return *this + (-o); }
    RatFunc operator*(const RatFunc& o) const { return RatFunc(num * o.num, den * o.den); }
    RatFunc operator/(const RatFunc& o) const {
        if (o.is_zero()) throw std::invalid_argument("rational function division by zero");
        return RatFunc(num * o.den, den * o.num);
    }

    Rat evaluate(const Rat& x) const {
        Rat d = den.evaluate<Rat>(x);
        if (d == 0) throw std::domain_error("rational function pole");
        return num.evaluate<Rat>(x) / d;
    }
};

template <class T>
inline std::string poly_str(const BasicPoly<T>& p, const std::string& var = "L") {
    if (p.is_zero()) return "0";
    std::string out;
    for (int i = p.degree(); i >= 0; --i) {
        T c = p.at(i);
        if (c == 0) continue;
        bool neg = c < 0;
        T a = neg ? T(-c) : c;
        if (out.empty()) out += neg ? "-" : "";
        else out += neg ? " - " : " + ";
        bool unit = (a == 1);
        if (i == 0) {
            out += a.str();
        } else {
            if (!unit) out += a.str() + "*";
            out += var;
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

}  // namespace kneadforge
