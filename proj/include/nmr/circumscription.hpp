#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/logic.hpp"
#include "nmr/model_set.hpp"
#include "nmr/universe.hpp"

namespace nmr {

// Minimal models of Π, in lexicographic order of the universe.
inline ModelSet circ(const CnfFormula& pi, const Universe& u, const Limits& lim = {}) {
    return models(pi, u, lim).minimal_elements();
}

// Whether every minimal model of Π satisfies Γ.
template <typename F>
bool circ_entails(const CnfFormula& pi, const F& gamma, const Universe& u, const Limits& lim = {}) {
    return circ(pi, u, lim).subset_of(models(gamma, u, lim));
}

inline bool circ_equivalent(const CnfFormula& a, const CnfFormula& b, const Universe& u, const Limits& lim = {}) {
    return circ(a, u, lim) == circ(b, u, lim);
}

enum class RedundancyStrategy {
    definitional,         // CIRC(Π \ {γ}) ≡ CIRC(Π)
    containment_in_pi,    // every model of Π \ {γ} ∪ ¬γ strictly contains a model of Π
    containment_in_rest,  // same, ranging over the models of Π \ {γ}
    positive_shortcut,    // classical redundancy; γ must be positive
};

struct CircVerdict {
    bool redundant = false;
    // Irredundant: minimal model of Π \ {γ} ∪ ¬γ containing no model of Π.
    std::optional<Model> witness_model;
    // Redundant: the clause that can be dropped.
    std::optional<Clause> witness_clause;
};

namespace detail {
inline CircVerdict circ_verdict(bool redundant, const CnfFormula& pi, const Clause& gamma, const Universe& u,
                                const Limits& lim) {
    CircVerdict v;
    v.redundant = redundant;
    if (redundant) {
        v.witness_clause = gamma;
        return v;
    }
    ModelSet mod_pi = models(pi, u, lim);
    ModelSet outside = models(pi.without(gamma), u, lim) - mod_pi;
    v.witness_model = (outside.minimal_elements() - mod_pi.upward_closure()).first();
    return v;
}
}  // namespace detail

inline CircVerdict circ_redundant_clause(const CnfFormula& pi, const Clause& gamma, const Universe& u,
                                         RedundancyStrategy strategy = RedundancyStrategy::containment_in_rest,
                                         const Limits& lim = {}) {
    if (!pi.contains(gamma)) throw InputError("clause is not part of the formula");
    const ModelSet mod_pi = models(pi, u, lim);
    const ModelSet mod_rest = models(pi.without(gamma), u, lim);
    bool redundant = false;
    switch (strategy) {
        case RedundancyStrategy::definitional:
            redundant = mod_rest.minimal_elements() == mod_pi.minimal_elements();
            break;
        case RedundancyStrategy::containment_in_pi:
            redundant = (mod_rest - mod_pi).subset_of(mod_pi.strictly_above());
            break;
        case RedundancyStrategy::containment_in_rest:
            redundant = mod_rest.subset_of(mod_pi.upward_closure());
            break;
        case RedundancyStrategy::positive_shortcut:
            if (!gamma.is_positive()) throw InputError("positive shortcut requires a positive clause");
            redundant = mod_rest.subset_of(models(gamma, u, lim));
            break;
    }
    return detail::circ_verdict(redundant, pi, gamma, u, lim);
}

// Redundant iff some clause can be dropped without changing the minimal
// models; the witness is the first such clause in formula order.
inline CircVerdict circ_redundant_formula(const CnfFormula& pi, const Universe& u, const Limits& lim = {}) {
    for (const auto& c : pi) {
        CircVerdict v = circ_redundant_clause(pi, c, u, RedundancyStrategy::containment_in_rest, lim);
        if (v.redundant) return v;
    }
    return CircVerdict{};
}

// A CNF formula together with the universe it was built over.
struct ExtendedCnf {
    CnfFormula formula;
    Universe universe;
};

inline std::string primed(const std::string& v) { return v + "__p"; }

// Π ∪ {x ∨ x' | ¬x ∈ γ}. For a clause with a negative literal, γ is
// classically redundant in Π iff it is circumscriptively redundant in the
// result.
inline ExtendedCnf lift_negative_clause(const CnfFormula& pi, const Clause& gamma, const Universe& u) {
    if (!pi.contains(gamma)) throw InputError("clause is not part of the formula");
    ExtendedCnf out{pi, u};
    for (const auto& l : gamma.literals()) {
        if (l.positive) continue;
        const std::string p = primed(l.var);
        if (out.universe.contains(p)) throw InputError("primed name '" + p + "' already in use");
        out.universe.add(p);
        out.formula.add(Clause{pos(l.var), pos(p)});
    }
    return out;
}

// I(Π, Π'): a formula whose clause ¬s ∨ ¬t ∨ γ (for γ in Π') is
// circumscriptively redundant exactly when γ is redundant in Π, and whose
// other clauses are all irredundant. Π must be consistent.
inline ExtendedCnf make_irredundant_circ(const CnfFormula& pi, const CnfFormula& protect, const Universe& u,
                                         const Limits& lim = {}) {
    u.require_covers(pi);
    for (const auto& c : protect)
        if (!pi.contains(c)) throw InputError("protected clause is not part of the formula");
    if (!satisfiable(pi, u, lim)) throw InputError("formula is inconsistent");

    Universe v = u;
    auto fresh = [&](const std::string& name) {
        if (!v.add(name)) throw InputError("generated name '" + name + "' already in use");
        return name;
    };
    const std::string s = fresh("__g_s"), t = fresh("__g_t"), a = fresh("__g_a"), b = fresh("__g_b");
    std::vector<std::string> c, d;
    for (std::size_t i = 1; i <= pi.size(); ++i) {
        c.push_back(fresh("__g_c" + std::to_string(i)));
        d.push_back(fresh("__g_d" + std::to_string(i)));
    }
    const std::vector<std::string> vars = variables(pi);
    for (const auto& x : vars) fresh(primed(x));

    auto with = [](std::vector<Literal> head, const Clause& tail) {
        head.insert(head.end(), tail.literals().begin(), tail.literals().end());
        return Clause(head);
    };

    CnfFormula r;
    r.add(Clause{pos(s), pos(t)});
    r.add(Clause{pos(s), pos(a)});
    r.add(Clause{pos(t), pos(b)});
    for (std::size_t i = 0; i < pi.size(); ++i) r.add(Clause{neg(s), pos(t), pos(c[i]), pos(d[i])});
    for (std::size_t i = 0; i < pi.size(); ++i) r.add(Clause{neg(s), neg(c[i])});
    for (std::size_t i = 0; i < pi.size(); ++i)
        if (!protect.contains(pi[i])) r.add(with({neg(t), pos(c[i])}, pi[i]));
    for (const auto& x : vars) r.add(Clause{pos(s), neg(t), pos(x), pos(primed(x))});
    for (const auto& g : protect) r.add(with({neg(s), neg(t)}, g));
    return {r, v};
}

}  // namespace nmr
