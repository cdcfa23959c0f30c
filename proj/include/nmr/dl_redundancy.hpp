#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "nmr/default_engine.hpp"
#include "nmr/default_theory.hpp"
#include "nmr/error.hpp"

namespace nmr {

struct DlVerdict {
    bool redundant = false;
    // Indices of the kept elements (background clauses or defaults) of the
    // equivalent proper subset.
    std::optional<std::vector<std::size_t>> witness_subset;
    std::optional<DlEvidence> counter_evidence;
};

// Calls f on every k-element index subset of {0..n-1}, in lexicographic order,
// until f returns true.
inline bool for_each_combination(std::size_t n, std::size_t k, const std::function<bool(const std::vector<std::size_t>&)>& f) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    if (k > n) return false;
    while (true) {
        if (f(idx)) return true;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
        if (i == 0) return false;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

inline std::uint64_t index_mask(const std::vector<std::size_t>& idx) {
    std::uint64_t m = 0;
    for (auto i : idx) m |= std::uint64_t{1} << i;
    return m;
}

namespace detail {

// Equivalence of ⟨D, W'⟩ and ⟨D, W⟩ for W' ⊆ W. Checks W' ⊨_D W first and
// then the direction the kind needs. Once W' ⊨_D W holds, every selected
// process of W' is one of W, so only the reverse containment is left.
inline bool subset_equivalent(const std::vector<Extension>& sub, const std::vector<Extension>& full,
                              const CnfFormula& w, const Universe& u, EquivKind kind, const Limits& lim) {
    const std::size_t n = u.size();
    ModelSet us = extension_union(sub, n);
    if (!us.subset_of(models(w, u, lim))) return false;
    switch (kind) {
        case EquivKind::mutual:
            return true;
        case EquivKind::consequence:
            return extension_union(full, n).subset_of(us);
        case EquivKind::faithful:
            for (const auto& e : full)
                if (std::none_of(sub.begin(), sub.end(), [&](const Extension& x) { return x.models == e.models; }))
                    return false;
            return true;
    }
    return false;
}

}  // namespace detail

// Whether dropping γ from the background leaves an equivalent theory.
inline DlVerdict redundant_clause_dl(const DefaultTheory& t, const Clause& gamma, Semantics sem, EquivKind kind,
                                     const EngineOptions& opt = {}) {
    auto idx = t.background().index_of(gamma);
    if (!idx) throw InputError("clause is not part of the background");
    DefaultTheory sub = t.with_background(t.background().without(gamma));
    auto full_ext = extensions(t, sem, opt);
    auto sub_ext = extensions(sub, sem, opt);
    DlVerdict v;
    v.redundant = detail::subset_equivalent(sub_ext, full_ext, t.background(), t.universe(), kind, opt.limits);
    if (v.redundant) {
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < t.background().size(); ++i)
            if (i != *idx) kept.push_back(i);
        v.witness_subset = kept;
    } else {
        v.counter_evidence =
            compare_extensions(sub_ext, sub.background(), full_ext, t.background(), t.universe(), kind, opt.limits)
                .evidence;
    }
    return v;
}

// Whether some proper subset of the background is equivalent. The witness is
// the first such subset by size, then lexicographically by index.
inline DlVerdict redundant_formula_dl(const DefaultTheory& t, Semantics sem, EquivKind kind,
                                      const EngineOptions& opt = {}) {
    const std::size_t m = t.background().size();
    opt.limits.check_background(m);
    auto full_ext = extensions(t, sem, opt);
    DlVerdict v;
    for (std::size_t k = 0; k < m && !v.redundant; ++k) {
        for_each_combination(m, k, [&](const std::vector<std::size_t>& keep) {
            auto sub_ext = extensions(t.with_background(t.background().subset(index_mask(keep))), sem, opt);
            if (!detail::subset_equivalent(sub_ext, full_ext, t.background(), t.universe(), kind, opt.limits))
                return false;
            v.redundant = true;
            v.witness_subset = keep;
            return true;
        });
    }
    return v;
}

// Whether removing one default leaves an equivalent theory.
inline DlVerdict redundant_default(const DefaultTheory& t, std::size_t d, Semantics sem, EquivKind kind,
                                   const EngineOptions& opt = {}) {
    if (d >= t.size()) throw InputError("default index out of range");
    Comparison c = compare_theories(t.without_default(d), t, sem, kind, opt);
    DlVerdict v;
    v.redundant = c.equivalent;
    if (c.equivalent) {
        std::vector<std::size_t> kept;
        for (std::size_t i = 0; i < t.size(); ++i)
            if (i != d) kept.push_back(i);
        v.witness_subset = kept;
    } else {
        v.counter_evidence = c.evidence;
    }
    return v;
}

inline DlVerdict redundant_default(const DefaultTheory& t, const std::string& name, Semantics sem, EquivKind kind,
                                   const EngineOptions& opt = {}) {
    return redundant_default(t, t.index_of(name), sem, kind, opt);
}

// Whether some proper subset of the defaults is equivalent; witness chosen by
// size, then lexicographically.
inline DlVerdict redundant_default_set(const DefaultTheory& t, Semantics sem, EquivKind kind,
                                       const EngineOptions& opt = {}) {
    opt.limits.check_defaults(t.size());
    auto full_ext = extensions(t, sem, opt);
    DlVerdict v;
    for (std::size_t k = 0; k < t.size() && !v.redundant; ++k) {
        for_each_combination(t.size(), k, [&](const std::vector<std::size_t>& keep) {
            DefaultTheory sub = t.restrict_defaults(index_mask(keep));
            auto sub_ext = extensions(sub, sem, opt);
            if (!compare_extensions(sub_ext, sub.background(), full_ext, t.background(), t.universe(), kind,
                                    opt.limits)
                     .equivalent)
                return false;
            v.redundant = true;
            v.witness_subset = keep;
            return true;
        });
    }
    return v;
}

}  // namespace nmr
