#pragma once

#include "kneadforge/bifurcation.hpp"

#include <atomic>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <thread>
#include <vector>

namespace kneadforge {

enum class TurningClass { Ordinary, Exceptional, InfeasibleCase3, NotControlled };

inline const char* turning_class_name(TurningClass k) {
    switch (k) {
        case TurningClass::Ordinary: return "ordinary";
        case TurningClass::Exceptional: return "exceptional";
        case TurningClass::InfeasibleCase3: return "infeasible-case-3";
        default: return "not-controlled";
    }
}

// Equation-level classification at a fixed slope: ordinary when some
// parameter coefficient survives, exceptional when every polynomial vanishes,
// infeasible when only the constant side survives.
inline TurningClass classify_equation(const BifurcationEq& eq, const AlgebraicNumber& lambda) {
    bool upper_all_zero = true;
    for (size_t i = 1; i < eq.Q.size(); ++i)
        if (sign_at(eq.Q[i], lambda) != 0) { upper_all_zero = false; break; }
    if (!upper_all_zero) return TurningClass::Ordinary;
    if (sign_at(eq.Q[0], lambda) == 0) return TurningClass::Exceptional;
    return TurningClass::InfeasibleCase3;
}

struct Classification {
    TurningClass kind = TurningClass::NotControlled;
    int horizon = 0;
    int return_step = -1;     // first exact turning-point hit, controlled cases
    Itinerary itinerary;      // closed itinerary through that hit
    BifurcationEq eq;         // its raw equation
};

// Follows the exact orbit of turning point c until it lands on a turning
// point again, then classifies through the derived equation.
inline Classification classify_turning_point(const BimodalMap& m, int c, int horizon) {
    Classification out;
    out.horizon = horizon;
    // step the orbit only until the first turning hit instead of
    // materializing the whole horizon
    detail::BmOrbitEngine e = detail::BmOrbitEngine::at_turning(m, c);
    if (e.cmp_minus_a() < 0 || e.cmp_plus_a() > 0)
        throw std::domain_error("point outside the domain");
    std::vector<Symbol> syms;
    int ret = -1;
    for (int k = 0; k <= horizon; ++k) {
        auto loc = e.locate();
        syms.push_back(loc.turning != 0 ? sym_c(loc.turning) : sym_J(loc.branch));
        if (k >= 1 && loc.turning != 0) { ret = k; break; }
        if (k == horizon) break;
        e.step(loc.branch);
    }
    if (ret < 0) return out;
    out.return_step = ret;
    out.itinerary = Itinerary{std::move(syms), std::nullopt};
    out.eq = derive_bifurcation_eq(out.itinerary);
    out.kind = classify_equation(out.eq, m.lambda);
    return out;
}

struct FactorMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// The common polynomial factor F with Q^{extended}_j = F * Q^{base}_j for
// every j. Exists whenever the base is compatible with the extension.
inline IntPoly extract_factor(const Itinerary& base, const Itinerary& extended) {
    BifurcationEq eb = derive_bifurcation_eq(base);
    BifurcationEq ee = derive_bifurcation_eq(extended);
    if (eb.Q.size() != ee.Q.size())
        throw std::invalid_argument("charts of base and extension differ");
    std::optional<IntPoly> F;
    for (size_t j = 0; j < eb.Q.size(); ++j) {
        if (eb.Q[j].is_zero()) {
            if (!ee.Q[j].is_zero())
                throw NotDivisible("zero base coefficient against nonzero extension");
            continue;
        }
        IntPoly fj = divide_exact(ee.Q[j], eb.Q[j]);
        if (!F) F = fj;
        else if (!(fj == *F)) throw FactorMismatch("quotients differ across coefficients");
    }
    if (!F) throw NotDivisible("base equation is identically zero");
    return *F;
}

struct ExceptionalRecord {
    Itinerary base;
    Itinerary extended;
    IntPoly factor;
    std::vector<AlgebraicNumber> roots_in_window;       // realized roots
    std::vector<RealizationInterval> realizations;      // parallel to roots_in_window
    std::vector<AlgebraicNumber> unrealized;            // roots with empty realization
};

namespace detail {

inline std::optional<ExceptionalRecord> cascade_candidate(const Itinerary& base,
                                                          const std::vector<Symbol>& word,
                                                          const std::vector<int>& blocks,
                                                          const Rat& win_lo, const Rat& win_hi) {
    std::vector<Symbol> syms;
    syms.push_back(base.symbols.front());
    syms.insert(syms.end(), word.begin(), word.end());
    for (int j : blocks) {
        syms.push_back(sym_J(j));
        syms.insert(syms.end(), word.begin(), word.end());
    }
    syms.push_back(base.symbols.front());
    ExceptionalRecord rec;
    rec.base = base;
    rec.extended = Itinerary{syms, std::nullopt};
    rec.factor = extract_factor(base, rec.extended);
    if (rec.factor.degree() < 1) return std::nullopt;
    bool any = false;
    for (const RootInterval& ri : isolate_real_roots(rec.factor, win_lo, win_hi)) {
        if (ri.is_point() && ri.lo == win_hi) continue;  // open window
        AlgebraicNumber root(rec.factor, ri.lo, ri.hi);
        any = true;
        RealizationInterval R = realization_interval(rec.extended, root);
        if (R.empty) {
            rec.unrealized.push_back(root);
        } else {
            rec.roots_in_window.push_back(root);
            rec.realizations.push_back(R);
        }
    }
    if (!any) return std::nullopt;
    return rec;
}

}  // namespace detail

// Enumerates single-symbol insertion blocks between repetitions of the base
// word, up to max_blocks of them, in deterministic (length, lexicographic)
// order; isolates the factor's roots in the open slope window and certifies
// per-root realization intervals. Root-free candidates are dropped; roots
// whose realization is empty stay on the record as unrealized.
inline std::vector<ExceptionalRecord> cascade_search(const Itinerary& base, int max_blocks,
                                                     const Rat& win_lo, const Rat& win_hi,
                                                     const std::vector<int>& alphabet = {0, 1},
                                                     int jobs = 1) {
    if (base.length() < 2 || !base.symbols.front().turning || !base.symbols.back().turning ||
        base.symbols.front().index != base.symbols.back().index)
        throw std::invalid_argument("base must be a periodic bifurcation itinerary");
    if (alphabet.empty()) throw std::invalid_argument("empty insertion alphabet");
    std::vector<Symbol> word(base.symbols.begin() + 1, base.symbols.end() - 1);

    std::vector<std::vector<int>> blocks;
    for (int r = 1; r <= max_blocks; ++r) {
        std::vector<size_t> idx(r, 0);
        while (true) {
            std::vector<int> js(r);
            for (int t = 0; t < r; ++t) js[t] = alphabet[idx[t]];
            blocks.push_back(std::move(js));
            int pos = r - 1;
            while (pos >= 0 && ++idx[pos] == alphabet.size()) idx[pos--] = 0;
            if (pos < 0) break;
        }
    }

    std::vector<std::optional<ExceptionalRecord>> results(blocks.size());
    auto work = [&](size_t i) {
        results[i] = detail::cascade_candidate(base, word, blocks[i], win_lo, win_hi);
    };
    if (jobs <= 1) {
        for (size_t i = 0; i < blocks.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr err;
        std::mutex err_mu;
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t)
            pool.emplace_back([&] {
                for (size_t i = next++; i < blocks.size(); i = next++) {
                    try {
                        work(i);
                    } catch (...) {
                        std::lock_guard<std::mutex> lk(err_mu);
                        if (!err) err = std::current_exception();
                    }
                }
            });
        for (auto& th : pool) th.join();
        if (err) std::rethrow_exception(err);
    }

    std::vector<ExceptionalRecord> out;
    for (auto& r : results)
        if (r) out.push_back(std::move(*r));
    return out;
}

}  // namespace kneadforge
