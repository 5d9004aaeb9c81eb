#pragma once

#include "kneadforge/pwl.hpp"

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace kneadforge {

// One itinerary entry: the turning point c^index or the open branch interval
// J^index the iterate lies in.
struct Symbol {
    bool turning = false;
    int index = 0;

    bool operator==(const Symbol& o) const { return turning == o.turning && index == o.index; }
    bool operator!=(const Symbol& o) const { return !(*this == o); }
};

inline Symbol sym_c(int i) { return {true, i}; }
inline Symbol sym_J(int i) { return {false, i}; }

struct BadItinerary : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct CollidedTurningPoints : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct LengthMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Finite window of a symbol sequence, optionally marked eventually periodic:
// periodic_tail = (start, period) means symbols repeat with that period from
// the start index onward.
struct Itinerary {
    std::vector<Symbol> symbols;
    std::optional<std::pair<int, int>> periodic_tail;

    int length() const { return (int)symbols.size(); }

    bool operator==(const Itinerary& o) const {
        return symbols == o.symbols && periodic_tail == o.periodic_tail;
    }

    // symbol at any position, extending through the periodic tail
    Symbol at(int m) const {
        if (m < length()) return symbols[m];
        if (!periodic_tail)
            throw LengthMismatch("position beyond the explicit window of a non-periodic itinerary");
        auto [s, p] = *periodic_tail;
        return symbols[s + (m - s) % p];
    }

    void validate_tail() const {
        if (!periodic_tail) return;
        auto [s, p] = *periodic_tail;
        if (s < 0 || p < 1 || s + p > length())
            throw BadItinerary("periodic tail does not fit the symbol window");
        for (int i = s + p; i < length(); ++i)
            if (symbols[i] != symbols[i - p]) throw BadItinerary("periodic tail is inconsistent");
    }
};

inline std::string format_symbol(const Symbol& s) {
    return (s.turning ? "c" : "J") + std::to_string(s.index);
}

inline std::string format_itinerary(const Itinerary& I) {
    std::string out;
    for (const auto& s : I.symbols) {
        if (!out.empty()) out += ' ';
        out += format_symbol(s);
    }
    if (I.periodic_tail) out += " | period=" + std::to_string(I.periodic_tail->second);
    return out;
}

// Text form: whitespace-separated "c1 J2 c1", optional "| period=k" suffix
// meaning the last k symbols repeat forever.
inline Itinerary parse_itinerary(const std::string& text) {
    Itinerary I;
    std::istringstream in(text);
    std::string tok;
    bool tail_part = false;
    while (in >> tok) {
        if (tok == "|") { tail_part = true; continue; }
        if (tail_part) {
            if (tok.rfind("period=", 0) != 0)
                throw BadItinerary("expected period=k after '|'");
            int p = std::stoi(tok.substr(7));
            I.periodic_tail = {I.length() - p, p};
            continue;
        }
        if (tok.size() < 2 || (tok[0] != 'c' && tok[0] != 'J'))
            throw BadItinerary("bad symbol token: " + tok);
        int idx = std::stoi(tok.substr(1));
        I.symbols.push_back({tok[0] == 'c', idx});
    }
    if (I.symbols.empty()) throw BadItinerary("empty itinerary");
    I.validate_tail();
    return I;
}

// Bimodal mirror: x -> -x conjugates (lambda, b) to (lambda, -b) and swaps
// J0 <-> J2, c1 <-> c2.
inline Itinerary mirror_itinerary(const Itinerary& I) {
    Itinerary out = I;
    for (auto& s : out.symbols) {
        if (s.turning) s.index = 3 - s.index;
        else s.index = 2 - s.index;
    }
    return out;
}

namespace detail {

inline Symbol orbit_symbol(const OrbitPoint& pt) {
    return pt.turning != 0 ? sym_c(pt.turning) : sym_J(pt.branch_i);
}

inline Itinerary itinerary_from_orbit(const std::vector<OrbitPoint>& orb) {
    Itinerary I;
    I.symbols.reserve(orb.size());
    // exact turning hits: two hits of the same turning point pin the tail
    std::vector<std::pair<int, int>> hits;
    for (int m = 0; m < (int)orb.size(); ++m) {
        I.symbols.push_back(orbit_symbol(orb[m]));
        if (orb[m].turning != 0) hits.push_back({m, orb[m].turning});
    }
    for (size_t u = 0; u + 1 < hits.size() && !I.periodic_tail; ++u)
        for (size_t v = u + 1; v < hits.size(); ++v)
            if (hits[v].second == hits[u].second) {
                I.periodic_tail = {hits[u].first, hits[v].first - hits[u].first};
                break;
            }
    if (I.periodic_tail) I.validate_tail();
    return I;
}

}  // namespace detail

inline Itinerary itinerary_of(const BimodalMap& m, const Rat& x, int n) {
    return detail::itinerary_from_orbit(bm_orbit(m, x, n));
}
inline Itinerary itinerary_of_turning(const BimodalMap& m, int i, int n) {
    return detail::itinerary_from_orbit(bm_turning_orbit(m, i, n));
}
inline Itinerary itinerary_of(const PLMap& m, const RatFunc& x, int n) {
    if (m.comb.N != 1)
        throw BadItinerary("itineraries are defined for single-interval spaces");
    if (m.collided)
        throw CollidedTurningPoints("itinerary is not unique for collided turning points");
    return detail::itinerary_from_orbit(pl_orbit(m, x, n));
}

// tilde_I is compatible with I when, position by position, interval symbols
// match exactly and a turning symbol c^i in tilde_I faces c^i, J^{i-1}, or
// J^i in I. Periodic tails extend a window indefinitely; without a tail the
// comparison stops at the shorter explicit window.
inline bool is_compatible(const Itinerary& tilde_I, const Itinerary& I) {
    int horizon;
    if (tilde_I.periodic_tail && I.periodic_tail) {
        int p1 = tilde_I.periodic_tail->second, p2 = I.periodic_tail->second;
        horizon = std::max(tilde_I.length(), I.length()) + p1 * p2;
    } else {
        horizon = std::max(tilde_I.length(), I.length());
        if (!tilde_I.periodic_tail) horizon = std::min(horizon, tilde_I.length());
        if (!I.periodic_tail) horizon = std::min(horizon, I.length());
    }
    for (int m = 0; m < horizon; ++m) {
        Symbol a = tilde_I.at(m);
        Symbol b = I.at(m);
        if (!a.turning) {
            if (b.turning || b.index != a.index) return false;
        } else {
            bool ok = (b.turning && b.index == a.index) ||
                      (!b.turning && (b.index == a.index - 1 || b.index == a.index));
            if (!ok) return false;
        }
    }
    return true;
}

// Linear forms of the iterated turning value in the bimodal chart:
// q^m(c^{i0}) = A[m-1] * b + B[m-1] for m = 1..prefix length.
struct BimodalForms {
    std::vector<DyadicPoly> A, B;
};

inline BimodalForms bimodal_linear_forms(const std::vector<Symbol>& prefix) {
    if (prefix.empty() || !prefix[0].turning)
        throw BadItinerary("prefix must start at a turning point");
    int i0 = prefix[0].index;
    if (i0 != 1 && i0 != 2) throw BadItinerary("turning index out of range");
    BimodalForms f;
    DyadicPoly A = DyadicPoly::half(IntPoly({1}));
    DyadicPoly B = DyadicPoly::half(IntPoly({i0 == 1 ? 1 : -1}));
    f.A.push_back(A);
    f.B.push_back(B);
    for (size_t m = 1; m < prefix.size(); ++m) {
        if (prefix[m].turning)
            throw BadItinerary("interior symbols of the prefix must be intervals");
        int j = prefix[m].index;
        if (j < 0 || j > 2) throw BadItinerary("interval index out of range");
        DyadicPoly lamA = A.shifted_up(1), lamB = B.shifted_up(1);
        if (j == 0) {
            A = lamA;
            B = lamB + DyadicPoly(IntPoly({1}));
        } else if (j == 1) {
            A = -lamA + DyadicPoly(IntPoly({1}));
            B = -lamB;
        } else {
            A = lamA;
            B = lamB - DyadicPoly(IntPoly({1}));
        }
        f.A.push_back(A);
        f.B.push_back(B);
    }
    return f;
}

// Exact solution set in b of "the n-itinerary of c^{i0} equals I" at a fixed
// slope. Interval in b with exact rational-function endpoints; empty set is a
// value, not an error.
struct RealizationInterval {
    AlgebraicNumber lambda;
    bool empty = true;
    RatFunc lo, hi;
    bool lo_attained = false, hi_attained = false;

    bool is_point() const { return !empty && lo == hi; }
};

namespace detail {

struct BoundSet {
    const AlgebraicNumber* lam;
    bool infeasible = false;
    std::optional<std::pair<RatFunc, bool>> lo, hi;  // value, strict

    void add_lower(const RatFunc& v, bool strict) {
        if (!lo) { lo = {v, strict}; return; }
        int c = cmp_at(v, lo->first, *lam);
        if (c > 0) lo = {v, strict};
        else if (c == 0) lo->second = lo->second || strict;
    }
    void add_upper(const RatFunc& v, bool strict) {
        if (!hi) { hi = {v, strict}; return; }
        int c = cmp_at(v, hi->first, *lam);
        if (c < 0) hi = {v, strict};
        else if (c == 0) hi->second = hi->second || strict;
    }

    enum Rel { LT, GT, EQ };
    // constraint P(lambda) * b  rel  R(lambda)
    void add(const RatPoly& P, const RatPoly& R, Rel rel, bool strict) {
        if (infeasible) return;
        int p = sign_at(P, *lam);
        if (p == 0) {
            int r = sign_at(R, *lam);
            bool ok = (rel == LT) ? (strict ? r > 0 : r >= 0)
                    : (rel == GT) ? (strict ? r < 0 : r <= 0)
                                  : r == 0;
            if (!ok) infeasible = true;
            return;
        }
        RatFunc v = RatFunc::from_rat_polys(R, P);
        if (rel == EQ) { add_lower(v, false); add_upper(v, false); return; }
        bool upper = (rel == LT) == (p > 0);
        if (upper) add_upper(v, strict); else add_lower(v, strict);
    }
};

}  // namespace detail

inline RealizationInterval realization_interval(const Itinerary& I, const AlgebraicNumber& lambda) {
    int n = I.length() - 1;
    if (n < 1) throw BadItinerary("itinerary needs at least two symbols");
    if (cmp_rat(lambda, Rat(1)) <= 0)
        throw std::invalid_argument("realization needs slope above 1");
    std::vector<Symbol> prefix(I.symbols.begin(), I.symbols.end() - 1);
    BimodalForms f = bimodal_linear_forms(prefix);

    RealizationInterval out;
    out.lambda = lambda;
    detail::BoundSet bs;
    bs.lam = &lambda;

    // the family itself: |b|(lambda-1) <= 3-lambda
    RatPoly lm1{Rat(-1), Rat(1)};
    RatPoly cap{Rat(3), Rat(-1)};
    bs.add(lm1, cap, detail::BoundSet::LT, false);
    bs.add(lm1, -cap, detail::BoundSet::GT, false);

    auto turning_cmp = [&](int m, int j, detail::BoundSet::Rel rel, bool strict) {
        // v_m rel c^j, cleared by 2*lambda:
        // (2 lambda A_m - 1) b  rel  e_j - 2 lambda B_m,  e_1 = -1, e_2 = +1
        RatPoly P = f.A[m - 1].to_rat_poly_form().shifted_up(1).scaled(Rat(2)) - RatPoly{Rat(1)};
        RatPoly R = RatPoly{Rat(j == 1 ? -1 : 1)} -
                    f.B[m - 1].to_rat_poly_form().shifted_up(1).scaled(Rat(2));
        bs.add(P, R, rel, strict);
    };
    auto domain_cmp = [&](int m, int side) {
        // v_m >= -a (side -1) / v_m <= +a (side +1), cleared by lambda-1
        RatPoly P = f.A[m - 1].to_rat_poly_form() * lm1;
        RatPoly R = RatPoly{Rat(side)} - f.B[m - 1].to_rat_poly_form() * lm1;
        bs.add(P, R, side < 0 ? detail::BoundSet::GT : detail::BoundSet::LT, false);
    };

    for (int m = 1; m <= n; ++m) {
        Symbol s = I.symbols[m];
        if (s.turning) {
            if (m != n) throw BadItinerary("interior symbols must be intervals");
            turning_cmp(m, s.index, detail::BoundSet::EQ, false);
        } else if (s.index == 0) {
            turning_cmp(m, 1, detail::BoundSet::LT, true);
            domain_cmp(m, -1);
        } else if (s.index == 1) {
            turning_cmp(m, 1, detail::BoundSet::GT, true);
            turning_cmp(m, 2, detail::BoundSet::LT, true);
        } else {
            turning_cmp(m, 2, detail::BoundSet::GT, true);
            domain_cmp(m, +1);
        }
        if (bs.infeasible) return out;
    }

    int c = cmp_at(bs.lo->first, bs.hi->first, lambda);
    if (c > 0) return out;
    if (c == 0 && (bs.lo->second || bs.hi->second)) return out;
    out.empty = false;
    out.lo = bs.lo->first;
    out.hi = bs.hi->first;
    out.lo_attained = !bs.lo->second;
    out.hi_attained = !bs.hi->second;
    return out;
}

// A rational value strictly inside a non-degenerate realization interval.
inline Rat rational_inside(const RealizationInterval& R) {
    if (R.empty) throw std::logic_error("empty realization interval");
    if (R.is_point()) throw std::logic_error("degenerate realization interval");
    Rat eps(1, 16);
    while (true) {
        RatInterval lo = enclose_at(R.lo, R.lambda, eps);
        RatInterval hi = enclose_at(R.hi, R.lambda, eps);
        if (lo.hi < hi.lo) {
            Rat mid = (lo.hi + hi.lo) / 2;
            RatFunc mf = RatFunc::constant(mid);
            if (cmp_at(mf, R.lo, R.lambda) > 0 && cmp_at(mf, R.hi, R.lambda) < 0) return mid;
        }
        eps /= 16;
    }
}

}  // namespace kneadforge
