#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "nmr/default_theory.hpp"
#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/logic.hpp"
#include "nmr/model_set.hpp"

namespace nmr {

struct EngineOptions {
    Limits limits;
    // Rational semantics: also require cons(Π) ∪ W to be consistent with the
    // joint justification just(Π). Turning it off leaves only the closure
    // condition.
    bool rational_joint_success = true;
};

// Model sets of the background and of every default's parts.
class CompiledTheory {
public:
    CompiledTheory(const DefaultTheory& t, const Limits& lim) : n_(t.universe().size()) {
        lim.check_vars(n_);
        if (t.size() > 63) throw CapExceeded("max-defaults", 63, t.size());
        background_ = models(t.background(), t.universe(), lim);
        for (const auto& d : t.defaults()) {
            prec_.push_back(models(d.prec, t.universe(), lim));
            just_.push_back(models(d.just, t.universe(), lim));
            cons_.push_back(models(d.cons, t.universe(), lim));
        }
    }

    std::size_t size() const { return prec_.size(); }
    std::size_t nvars() const { return n_; }
    const ModelSet& background() const { return background_; }
    const ModelSet& prec(std::size_t i) const { return prec_[i]; }
    const ModelSet& just(std::size_t i) const { return just_[i]; }
    const ModelSet& cons(std::size_t i) const { return cons_[i]; }

    // W ∧ cons(S) for the defaults in mask.
    ModelSet context(std::uint64_t mask) const {
        ModelSet c = background_;
        for (std::size_t i = 0; i < size(); ++i)
            if (mask >> i & 1U) c &= cons_[i];
        return c;
    }
    // Conjunction of the justifications in mask.
    ModelSet joint_just(std::uint64_t mask) const {
        ModelSet j = ModelSet::all(n_);
        for (std::size_t i = 0; i < size(); ++i)
            if (mask >> i & 1U) j &= just_[i];
        return j;
    }

private:
    std::size_t n_;
    ModelSet background_;
    std::vector<ModelSet> prec_, just_, cons_;
};

namespace detail {

inline std::uint64_t bit(std::size_t i) { return std::uint64_t{1} << i; }

inline std::uint64_t mask_of(const ProcessSeq& seq) {
    std::uint64_t m = 0;
    for (auto i : seq) m |= bit(i);
    return m;
}

// Success of a default set S with context c = W ∧ cons(S) and joint
// justification j. Every variant is anti-monotone in S, which the set search
// relies on for pruning.
inline bool succeeds(const CompiledTheory& ct, Semantics sem, const EngineOptions& opt, std::uint64_t s,
                     const ModelSet& c, const ModelSet& j) {
    switch (sem) {
        case Semantics::reiter:
        case Semantics::justified:
            for (std::size_t i = 0; i < ct.size(); ++i)
                if ((s >> i & 1U) && !c.intersects(ct.just(i))) return false;
            return true;
        case Semantics::constrained:
            return c.intersects(j);
        case Semantics::rational:
            return !opt.rational_joint_success || c.intersects(j);
    }
    return false;
}

// Closure: no outside default may still be added in the way the semantics
// allows.
inline bool closed(const CompiledTheory& ct, Semantics sem, std::uint64_t s, const ModelSet& c, const ModelSet& j) {
    for (std::size_t d = 0; d < ct.size(); ++d) {
        if (s >> d & 1U) continue;
        if (!c.subset_of(ct.prec(d))) continue;
        switch (sem) {
            case Semantics::reiter:
                if (c.intersects(ct.just(d))) return false;
                break;
            case Semantics::justified: {
                ModelSet c2 = c & ct.cons(d);
                bool ok = c2.intersects(ct.just(d));
                for (std::size_t e = 0; ok && e < ct.size(); ++e)
                    if ((s >> e & 1U) && !c2.intersects(ct.just(e))) ok = false;
                if (ok) return false;
                break;
            }
            case Semantics::constrained: {
                ModelSet c2 = c & ct.cons(d);
                if (c2.intersects(j, ct.just(d))) return false;
                break;
            }
            case Semantics::rational:
                if (c.intersects(ct.just(d)) && c.intersects(j, ct.just(d))) return false;
                break;
        }
    }
    return true;
}

// Lexicographically first grounded ordering of a default set. Adding
// consequences never invalidates a precondition, so picking the smallest
// applicable index at every step is safe.
inline ProcessSeq canonical_order(const CompiledTheory& ct, std::uint64_t s) {
    ProcessSeq seq;
    ModelSet c = ct.background();
    std::uint64_t placed = 0;
    while (placed != s) {
        bool moved = false;
        for (std::size_t d = 0; d < ct.size(); ++d) {
            if (!(s >> d & 1U) || (placed >> d & 1U)) continue;
            if (c.subset_of(ct.prec(d))) {
                seq.push_back(d);
                placed |= bit(d);
                c &= ct.cons(d);
                moved = true;
                break;
            }
        }
        if (!moved) throw Error("default set has no grounded ordering");
    }
    return seq;
}

}  // namespace detail

inline bool is_process(const DefaultTheory& t, const ProcessSeq& seq, const EngineOptions& opt = {}) {
    CompiledTheory ct(t, opt.limits);
    ModelSet c = ct.background();
    std::uint64_t seen = 0;
    for (auto d : seq) {
        if (d >= t.size()) throw InputError("default index out of range");
        if (seen >> d & 1U) return false;
        if (!c.subset_of(ct.prec(d))) return false;
        seen |= detail::bit(d);
        c &= ct.cons(d);
    }
    return true;
}

// cons(Π) ∪ W entails prec(d) and is consistent with just(d).
inline bool locally_applicable(const DefaultTheory& t, const ProcessSeq& seq, std::size_t d,
                               const EngineOptions& opt = {}) {
    if (std::find(seq.begin(), seq.end(), d) != seq.end()) throw InputError("default already in the process");
    CompiledTheory ct(t, opt.limits);
    ModelSet c = ct.context(detail::mask_of(seq));
    return c.subset_of(ct.prec(d)) && c.intersects(ct.just(d));
}

// Local applicability plus consistency with the joint justification of Π·[d].
inline bool globally_applicable(const DefaultTheory& t, const ProcessSeq& seq, std::size_t d,
                                const EngineOptions& opt = {}) {
    if (std::find(seq.begin(), seq.end(), d) != seq.end()) throw InputError("default already in the process");
    CompiledTheory ct(t, opt.limits);
    const std::uint64_t m = detail::mask_of(seq);
    ModelSet c = ct.context(m);
    return c.subset_of(ct.prec(d)) && c.intersects(ct.just(d)) && c.intersects(ct.joint_just(m), ct.just(d));
}

// Whether a process is selected, checked on the sequence itself.
inline bool is_selected(const DefaultTheory& t, const ProcessSeq& seq, Semantics sem, const EngineOptions& opt = {}) {
    if (!is_process(t, seq, opt)) return false;
    CompiledTheory ct(t, opt.limits);
    const std::uint64_t m = detail::mask_of(seq);
    ModelSet c = ct.context(m);
    ModelSet j = ct.joint_just(m);
    return detail::succeeds(ct, sem, opt, m, c, j) && detail::closed(ct, sem, m, c, j);
}

// All selected processes in lexicographic order of default indices. This
// walks every ordering, so it is exponential in |D| even for small outputs.
inline std::vector<ProcessSeq> selected_processes(const DefaultTheory& t, Semantics sem,
                                                  const EngineOptions& opt = {}) {
    opt.limits.check_defaults(t.size());
    CompiledTheory ct(t, opt.limits);
    std::vector<ProcessSeq> out;
    ProcessSeq seq;
    std::function<void(std::uint64_t, const ModelSet&)> walk = [&](std::uint64_t m, const ModelSet& c) {
        ModelSet j = ct.joint_just(m);
        if (detail::succeeds(ct, sem, opt, m, c, j) && detail::closed(ct, sem, m, c, j)) out.push_back(seq);
        for (std::size_t d = 0; d < ct.size(); ++d) {
            if ((m >> d & 1U) || !c.subset_of(ct.prec(d))) continue;
            seq.push_back(d);
            walk(m | detail::bit(d), c & ct.cons(d));
            seq.pop_back();
        }
    };
    walk(0, ct.background());
    return out;
}

// Default sets (as bit masks) of the selected processes, found by searching
// grounded sets instead of sequences. Sorted by canonical ordering.
inline std::vector<std::uint64_t> selected_default_sets(const CompiledTheory& ct, Semantics sem,
                                                        const EngineOptions& opt) {
    std::vector<std::uint64_t> out;
    std::unordered_set<std::uint64_t> seen;
    std::function<void(std::uint64_t, const ModelSet&, const ModelSet&)> walk =
        [&](std::uint64_t m, const ModelSet& c, const ModelSet& j) {
            if (!detail::succeeds(ct, sem, opt, m, c, j)) return;
            if (detail::closed(ct, sem, m, c, j)) out.push_back(m);
            for (std::size_t d = 0; d < ct.size(); ++d) {
                if ((m >> d & 1U) || !c.subset_of(ct.prec(d))) continue;
                const std::uint64_t next = m | detail::bit(d);
                if (!seen.insert(next).second) continue;
                walk(next, c & ct.cons(d), j & ct.just(d));
            }
        };
    seen.insert(0);
    walk(0, ct.background(), ModelSet::all(ct.nvars()));
    std::vector<std::pair<ProcessSeq, std::uint64_t>> keyed;
    for (auto m : out) keyed.emplace_back(detail::canonical_order(ct, m), m);
    std::sort(keyed.begin(), keyed.end());
    out.clear();
    for (auto& [seq, m] : keyed) out.push_back(m);
    return out;
}

inline std::vector<std::uint64_t> selected_default_sets(const DefaultTheory& t, Semantics sem,
                                                        const EngineOptions& opt = {}) {
    opt.limits.check_defaults(t.size());
    return selected_default_sets(CompiledTheory(t, opt.limits), sem, opt);
}

namespace detail {
inline Formula extension_formula(const DefaultTheory& t, const ProcessSeq& seq) {
    std::vector<Formula> parts;
    for (const auto& c : t.background()) parts.push_back(clause_formula(c));
    for (auto d : seq) parts.push_back(t[d].cons);
    return conj_flat(parts);
}
}  // namespace detail

// Extensions up to equivalence, ordered by their first generating process.
// Each generating default set contributes its canonical ordering.
inline std::vector<Extension> extensions(const DefaultTheory& t, Semantics sem, const EngineOptions& opt = {}) {
    opt.limits.check_defaults(t.size());
    CompiledTheory ct(t, opt.limits);
    std::vector<Extension> out;
    for (auto m : selected_default_sets(ct, sem, opt)) {
        ProcessSeq seq = detail::canonical_order(ct, m);
        ModelSet c = ct.context(m);
        auto it = std::find_if(out.begin(), out.end(), [&](const Extension& e) { return e.models == c; });
        if (it != out.end()) {
            it->generating_processes.push_back(seq);
            continue;
        }
        out.push_back(Extension{detail::extension_formula(t, seq), c, {seq}});
    }
    return out;
}

// Models of the disjunction of all extensions (empty if there are none).
inline ModelSet extension_union(const std::vector<Extension>& exts, std::size_t nvars) {
    ModelSet u = ModelSet::none(nvars);
    for (const auto& e : exts) u |= e.models;
    return u;
}

// Skeptical consequence; vacuously true without extensions.
inline bool dl_entails(const DefaultTheory& t, Semantics sem, const Formula& phi, const EngineOptions& opt = {}) {
    auto exts = extensions(t, sem, opt);
    return extension_union(exts, t.universe().size()).subset_of(models(phi, t.universe(), opt.limits));
}

// Defaults generating E: E entails prec(d) and is consistent with just(d) ∧ cons(d).
inline std::vector<std::size_t> gen_set(const Formula& e, const DefaultTheory& t, const EngineOptions& opt = {}) {
    CompiledTheory ct(t, opt.limits);
    ModelSet em = models(e, t.universe(), opt.limits);
    std::vector<std::size_t> out;
    for (std::size_t d = 0; d < ct.size(); ++d)
        if (em.subset_of(ct.prec(d)) && em.intersects(ct.just(d), ct.cons(d))) out.push_back(d);
    return out;
}

// What distinguishes two non-equivalent theories.
struct DlEvidence {
    EquivKind kind = EquivKind::faithful;
    // Which theory the distinguishing object comes from: 0 = first, 1 = second.
    int side = 0;
    std::optional<Formula> extension;  // faithful: extension with no equivalent on the other side
    std::optional<Model> model;        // consequence: model of one disjunction only
    std::optional<Clause> clause;      // mutual: background clause of `side` not entailed by the other
    std::string description;
};

struct Comparison {
    bool equivalent = false;
    std::optional<DlEvidence> evidence;
};

// Comparison of extension sets computed over the same universe.
inline Comparison compare_extensions(const std::vector<Extension>& e1, const CnfFormula& w1,
                                     const std::vector<Extension>& e2, const CnfFormula& w2, const Universe& u,
                                     EquivKind kind, const Limits& lim = {}) {
    const std::size_t n = u.size();
    Comparison r;
    r.equivalent = true;
    auto missing = [](const std::vector<Extension>& a, const std::vector<Extension>& b) -> const Extension* {
        for (const auto& x : a)
            if (std::none_of(b.begin(), b.end(), [&](const Extension& y) { return y.models == x.models; })) return &x;
        return nullptr;
    };
    switch (kind) {
        case EquivKind::faithful: {
            for (int side = 0; side < 2 && r.equivalent; ++side) {
                const Extension* x = side == 0 ? missing(e1, e2) : missing(e2, e1);
                if (!x) continue;
                r.equivalent = false;
                DlEvidence ev{kind, side, x->formula, std::nullopt, std::nullopt,
                              std::string("extension of the ") + (side == 0 ? "first" : "second") +
                                  " theory has no equivalent extension in the other"};
                r.evidence = ev;
            }
            break;
        }
        case EquivKind::consequence: {
            ModelSet u1 = extension_union(e1, n), u2 = extension_union(e2, n);
            for (int side = 0; side < 2 && r.equivalent; ++side) {
                ModelSet diff = side == 0 ? u1 - u2 : u2 - u1;
                if (diff.empty()) continue;
                r.equivalent = false;
                DlEvidence ev{kind, side, std::nullopt, diff.first(), std::nullopt,
                              std::string("model of the ") + (side == 0 ? "first" : "second") +
                                  " theory's extensions that the other theory's extensions exclude"};
                r.evidence = ev;
            }
            break;
        }
        case EquivKind::mutual: {
            ModelSet u1 = extension_union(e1, n), u2 = extension_union(e2, n);
            // side s: a clause of W_s not entailed by the other theory.
            for (int side = 0; side < 2 && r.equivalent; ++side) {
                const CnfFormula& w = side == 0 ? w1 : w2;
                const ModelSet& other = side == 0 ? u2 : u1;
                for (const auto& c : w) {
                    if (other.subset_of(models(c, u, lim))) continue;
                    r.equivalent = false;
                    DlEvidence ev{kind, side, std::nullopt, std::nullopt, c,
                                  std::string("background clause of the ") + (side == 0 ? "first" : "second") +
                                      " theory not entailed by the other theory"};
                    r.evidence = ev;
                    break;
                }
            }
            break;
        }
    }
    return r;
}

// Theories over different universes are compared over the union of both.
inline Comparison compare_theories(const DefaultTheory& t1, const DefaultTheory& t2, Semantics sem, EquivKind kind,
                                   const EngineOptions& opt = {}) {
    if (!(t1.universe() == t2.universe())) {
        Universe u = t1.universe().extended(t2.universe().names());
        return compare_theories(t1.with_universe(u), t2.with_universe(u), sem, kind, opt);
    }
    auto e1 = extensions(t1, sem, opt);
    auto e2 = extensions(t2, sem, opt);
    return compare_extensions(e1, t1.background(), e2, t2.background(), t1.universe(), kind, opt.limits);
}

inline bool dl_equivalent(const DefaultTheory& t1, const DefaultTheory& t2, Semantics sem, EquivKind kind,
                          const EngineOptions& opt = {}) {
    return compare_theories(t1, t2, sem, kind, opt).equivalent;
}

}  // namespace nmr
