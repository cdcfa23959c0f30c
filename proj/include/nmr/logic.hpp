#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/model_set.hpp"
#include "nmr/universe.hpp"

namespace nmr {

namespace detail {
inline ModelSet compile_node(const Formula& f, const Universe& u) {
    using K = Formula::Kind;
    const std::size_t n = u.size();
    switch (f.kind()) {
        case K::constant_true:
            return ModelSet::all(n);
        case K::constant_false:
            return ModelSet::none(n);
        case K::variable:
            return ModelSet::variable(n, u.index_of(f.name()));
        case K::negation:
            return ~compile_node(f.child(0), u);
        case K::conjunction: {
            ModelSet r = ModelSet::all(n);
            for (const auto& c : f.children()) r &= compile_node(c, u);
            return r;
        }
        case K::disjunction: {
            ModelSet r = ModelSet::none(n);
            for (const auto& c : f.children()) r |= compile_node(c, u);
            return r;
        }
        case K::implication:
            return ~compile_node(f.child(0), u) | compile_node(f.child(1), u);
    }
    return ModelSet::none(n);
}
}  // namespace detail

// Models of f over u. Every variable of f must belong to u.
inline ModelSet models(const Formula& f, const Universe& u, const Limits& lim = {}) {
    lim.check_vars(u.size());
    return detail::compile_node(f, u);
}

inline ModelSet models(const Clause& c, const Universe& u, const Limits& lim = {}) {
    lim.check_vars(u.size());
    ModelSet r = ModelSet::none(u.size());
    for (const auto& l : c.literals()) {
        ModelSet v = ModelSet::variable(u.size(), u.index_of(l.var));
        r |= l.positive ? v : ~v;
    }
    return r;
}

inline ModelSet models(const CnfFormula& cnf, const Universe& u, const Limits& lim = {}) {
    lim.check_vars(u.size());
    ModelSet r = ModelSet::all(u.size());
    for (const auto& c : cnf) r &= models(c, u, lim);
    return r;
}

// Models of f in lexicographic order.
template <typename F>
std::vector<Model> enumerate_models(const F& f, const Universe& u, const Limits& lim = {}) {
    return models(f, u, lim).models();
}

template <typename A, typename B>
bool entails(const A& a, const B& b, const Universe& u, const Limits& lim = {}) {
    return models(a, u, lim).subset_of(models(b, u, lim));
}

template <typename A, typename B>
bool consistent(const A& a, const B& b, const Universe& u, const Limits& lim = {}) {
    return models(a, u, lim).intersects(models(b, u, lim));
}

template <typename A>
bool satisfiable(const A& a, const Universe& u, const Limits& lim = {}) {
    return !models(a, u, lim).empty();
}

template <typename A, typename B>
bool equivalent(const A& a, const B& b, const Universe& u, const Limits& lim = {}) {
    return models(a, u, lim) == models(b, u, lim);
}

// Overloads that work over the variables the two operands mention.
template <typename A, typename B>
bool entails(const A& a, const B& b) {
    return entails(a, b, Universe::of(a, b));
}
template <typename A, typename B>
bool consistent(const A& a, const B& b) {
    return consistent(a, b, Universe::of(a, b));
}
template <typename A, typename B>
bool equivalent(const A& a, const B& b) {
    return equivalent(a, b, Universe::of(a, b));
}

// Subset-minimal members of a model set.
inline ModelSet minimal_elements(const ModelSet& s) { return s.minimal_elements(); }

inline bool evaluate(const Formula& f, Model m, const Universe& u) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::constant_true:
            return true;
        case K::constant_false:
            return false;
        case K::variable:
            return holds(m, u.index_of(f.name()), u.size());
        case K::negation:
            return !evaluate(f.child(0), m, u);
        case K::conjunction:
            for (const auto& c : f.children())
                if (!evaluate(c, m, u)) return false;
            return true;
        case K::disjunction:
            for (const auto& c : f.children())
                if (evaluate(c, m, u)) return true;
            return false;
        case K::implication:
            return !evaluate(f.child(0), m, u) || evaluate(f.child(1), m, u);
    }
    return false;
}

// Whether Π \ {γ} ⊨ γ. γ must be a clause of Π.
inline bool classically_redundant_clause(const CnfFormula& pi, const Clause& gamma, const Universe& u,
                                         const Limits& lim = {}) {
    if (!pi.contains(gamma)) throw InputError("clause is not part of the formula");
    return models(pi.without(gamma), u, lim).subset_of(models(gamma, u, lim));
}

// First clause (in formula order) implied by the others, if any.
inline std::optional<Clause> classically_redundant_formula(const CnfFormula& pi, const Universe& u,
                                                           const Limits& lim = {}) {
    for (const auto& c : pi)
        if (classically_redundant_clause(pi, c, u, lim)) return c;
    return std::nullopt;
}

}  // namespace nmr
