#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "nmr/default_theory.hpp"
#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/logic.hpp"
#include "nmr/universe.hpp"

namespace nmr {

// Hands out generated variable names, recording them in a universe.
// Tagged names live under "__g_"; a tag already in use gets a numeric suffix
// so constructions can be nested.
class FreshNamer {
public:
    explicit FreshNamer(Universe& u) : u_(u) {}

    std::string tagged(const std::string& tag) {
        std::string name = "__g_" + tag;
        for (int k = 2; u_.contains(name); ++k) name = "__g_" + tag + "_" + std::to_string(k);
        u_.add(name);
        return name;
    }
    // A derived name such as x__p must be new; there is no fallback.
    std::string exact(const std::string& name) {
        if (!u_.add(name)) throw InputError("generated name '" + name + "' already in use");
        return name;
    }

private:
    Universe& u_;
};

inline std::string unique_default_name(const std::vector<Default>& ds, const std::string& base) {
    auto taken = [&](const std::string& n) {
        return std::any_of(ds.begin(), ds.end(), [&](const Default& d) { return d.name == n; });
    };
    std::string name = base;
    for (int k = 2; taken(name); ++k) name = base + "_" + std::to_string(k);
    return name;
}

// γ as the categorical normal default (:true / γ).
inline Default clause_to_default(const Clause& gamma, const std::string& name) {
    return Default{name, Formula::top(), Formula::top(), clause_formula(gamma)};
}

// Moves every background clause into a default of its own. The result has
// an empty background.
inline DefaultTheory embed_clauses_as_defaults(const DefaultTheory& t) {
    std::vector<Default> ds = t.defaults();
    for (std::size_t i = 0; i < t.background().size(); ++i)
        ds.push_back(clause_to_default(t.background()[i], unique_default_name(ds, "clause" + std::to_string(i + 1))));
    return DefaultTheory(ds, CnfFormula{}, t.universe());
}

// Moves one background clause into a default.
inline DefaultTheory move_clause_to_default(const DefaultTheory& t, const Clause& gamma) {
    auto idx = t.background().index_of(gamma);
    if (!idx) throw InputError("clause is not part of the background");
    std::vector<Default> ds = t.defaults();
    ds.push_back(clause_to_default(gamma, unique_default_name(ds, "clause" + std::to_string(*idx + 1))));
    return DefaultTheory(ds, t.background().without(gamma), t.universe());
}

// Protects the background clauses listed in `protect` (indices into W): in
// the result, an equivalent proper subset of the background must keep every
// protected clause c_i ∨ γ_i, and it exists iff the projection is equivalent
// to W.
inline DefaultTheory make_clauses_irredundant(const DefaultTheory& t, const std::vector<std::size_t>& protect,
                                              const Limits& lim = {}) {
    const CnfFormula& w = t.background();
    for (auto i : protect)
        if (i >= w.size()) throw InputError("protected clause index out of range");
    if (!satisfiable(w, t.universe(), lim)) throw InputError("background is inconsistent");

    Universe u = t.universe();
    FreshNamer fresh(u);
    std::vector<std::string> c;
    for (std::size_t i = 1; i <= w.size(); ++i) c.push_back(fresh.tagged("c" + std::to_string(i)));

    CnfFormula w2;
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::vector<Literal> lits{pos(c[i])};
        lits.insert(lits.end(), w[i].literals().begin(), w[i].literals().end());
        w2.add(Clause(lits));
    }
    std::vector<Formula> none_of;
    for (const auto& ci : c) none_of.push_back(~var(ci));

    std::vector<Default> ds;
    const Formula all_off = Formula::conjunction(none_of);
    ds.push_back(Default{"", Formula::top(), all_off, all_off});
    std::vector<std::size_t> sorted = protect;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto i : sorted) {
        std::vector<Formula> parts{var(c[i])};
        for (std::size_t j = 0; j < c.size(); ++j)
            if (j != i) parts.push_back(~var(c[j]));
        const Formula sel = Formula::conjunction(parts);
        ds.push_back(Default{"", clause_formula(w2[i]), sel, sel});
    }
    std::vector<Default> named;
    for (const auto& d : t.defaults()) {
        std::vector<Formula> pre = none_of;
        pre.push_back(d.prec);
        named.push_back(Default{d.name, conj_flat(pre), d.just, d.cons});
    }
    ds[0].name = unique_default_name(t.defaults(), "protect_all_off");
    for (std::size_t k = 0; k < sorted.size(); ++k) {
        std::vector<Default> taken = t.defaults();
        taken.insert(taken.end(), ds.begin(), ds.begin() + static_cast<long>(k) + 1);
        ds[k + 1].name = unique_default_name(taken, "protect_" + std::to_string(sorted[k] + 1));
    }
    ds.insert(ds.end(), named.begin(), named.end());
    return DefaultTheory(ds, w2, u);
}

// Protects the defaults listed in `protect` (indices into D): an equivalent
// subset of the result must contain the two selector defaults and every
// rewritten protected default.
inline DefaultTheory make_defaults_irredundant(const DefaultTheory& t, const std::vector<std::size_t>& protect) {
    for (auto i : protect)
        if (i >= t.size()) throw InputError("protected default index out of range");
    Universe u = t.universe();
    FreshNamer fresh(u);
    const std::string p = fresh.tagged("p"), q = fresh.tagged("q");
    const Formula P = var(p), Q = var(q);

    std::vector<Default> ds;
    ds.push_back(Default{unique_default_name(t.defaults(), "protect_pos"), Formula::top(), P & Q, P & Q});
    ds.push_back(Default{unique_default_name(t.defaults(), "protect_neg"), Formula::top(), ~P & Q, ~P & Q});
    std::size_t vi = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Default& d = t[i];
        if (std::find(protect.begin(), protect.end(), i) != protect.end()) {
            const std::string v = fresh.tagged("v" + std::to_string(++vi));
            Formula pre = d.prec.is_true() ? Q : Q & (~P | d.prec);
            Formula just = d.just.is_true() ? Formula::top() : ~P | d.just;
            Formula cons = (P | var(v)) & (~P | d.cons);
            ds.push_back(Default{d.name, pre, just, cons});
        } else {
            ds.push_back(Default{d.name, conj_flat({Q, P, d.prec}), d.just, d.cons});
        }
    }
    return DefaultTheory(ds, t.background(), u);
}

enum class LiteralMove { to_background, to_justification };

// Moves literal l between the justification of default d and the
// background. The variable of l may not occur in W, in the other defaults,
// or in prec(d) and cons(d).
inline DefaultTheory move_just_literal(const DefaultTheory& t, std::size_t d, const Literal& l, LiteralMove dir) {
    if (d >= t.size()) throw InputError("default index out of range");
    const Default& dd = t[d];
    std::vector<Default> ds = t.defaults();
    CnfFormula w = t.background();
    const Clause unit{l};
    auto check_unmentioned = [&](const CnfFormula& bg) {
        if (mentions(bg, l.var)) throw InputError("variable '" + l.var + "' occurs in the background");
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i == d) continue;
            if (mentions(t[i].prec, l.var) || mentions(t[i].just, l.var) || mentions(t[i].cons, l.var))
                throw InputError("variable '" + l.var + "' occurs in default '" + t[i].name + "'");
        }
        if (mentions(dd.prec, l.var) || mentions(dd.cons, l.var))
            throw InputError("variable '" + l.var + "' occurs in the precondition or consequence");
    };
    if (dir == LiteralMove::to_background) {
        const Formula lf = literal_formula(l);
        Formula rest;
        if (dd.just == lf) {
            rest = Formula::top();
        } else if (dd.just.kind() == Formula::Kind::conjunction) {
            std::vector<Formula> kept = dd.just.children();
            auto it = std::find(kept.begin(), kept.end(), lf);
            if (it == kept.end()) throw InputError("justification has no conjunct " + (l.positive ? l.var : "~" + l.var));
            kept.erase(it);
            rest = Formula::conjunction(kept);
        } else {
            throw InputError("justification is not of the form beta & l");
        }
        Default moved{dd.name, dd.prec, rest, dd.cons};
        if (mentions(rest, l.var)) throw InputError("variable '" + l.var + "' occurs elsewhere in the justification");
        check_unmentioned(w);
        ds[d] = moved;
        w.add(unit);
    } else {
        if (!w.contains(unit)) throw InputError("background has no unit clause for the literal");
        w = w.without(unit);
        check_unmentioned(w);
        if (mentions(dd.just, l.var)) throw InputError("variable '" + l.var + "' already in the justification");
        ds[d].just = dd.just.is_true() ? literal_formula(l) : dd.just & literal_formula(l);
    }
    return DefaultTheory(ds, w, t.universe());
}

// A default theory whose default f_default carries the QBF matrix in its
// justification, with a classically irredundant background.
struct ReductionHost {
    DefaultTheory theory;
    std::size_t f_default = 0;
};

inline std::string positive_marker(const std::string& w) { return w + "__pos"; }
inline std::string negative_marker(const std::string& w) { return w + "__neg"; }

// The two-in-one construction: D_w plus the originals guarded by a fresh p,
// over the background W ∪ {w+, w-}.
inline ReductionHost two_in_one(const ReductionHost& host, const std::string& w, const Limits& lim = {}) {
    const DefaultTheory& t = host.theory;
    if (host.f_default >= t.size()) throw InputError("host default index out of range");
    if (!is_identifier(w)) throw InputError("invalid variable name '" + w + "'");
    if (mentions(t.background(), w)) throw InputError("variable '" + w + "' occurs in the background");
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (mentions(t[i].prec, w) || mentions(t[i].cons, w) || (i != host.f_default && mentions(t[i].just, w)))
            throw InputError("variable '" + w + "' occurs outside the matrix");
    }
    if (classically_redundant_formula(t.background(), t.universe(), lim))
        throw InputError("background is classically redundant");

    Universe u = t.universe();
    u.add(w);
    FreshNamer fresh(u);
    const std::string wp = fresh.exact(positive_marker(w)), wn = fresh.exact(negative_marker(w));
    const std::string p = fresh.tagged("p");
    const Formula W = var(w), WP = var(wp), WN = var(wn), P = var(p);

    std::vector<Default> ds;
    auto add = [&](const std::string& base, Formula pre, Formula just, Formula cons) {
        std::vector<Default> taken = t.defaults();
        taken.insert(taken.end(), ds.begin(), ds.end());
        ds.push_back(Default{unique_default_name(taken, base), pre, just, cons});
    };
    add(w + "_both", WP & WN, ~cnf_formula(t.background()), ~P);
    add(w + "_none", Formula::top(), ~WP & ~WN, ~P);
    add(w + "_pos", WP, W & P, W & P);
    add(w + "_neg", WN, ~W & P, ~W & P);
    const std::size_t offset = ds.size();
    for (const auto& d : t.defaults()) ds.push_back(Default{d.name, conj_flat({P, d.prec}), d.just, d.cons});

    CnfFormula bg = t.background();
    bg.add(Clause{pos(wp)});
    bg.add(Clause{pos(wn)});
    return ReductionHost{DefaultTheory(ds, bg, u), host.f_default + offset};
}

// Applies two_in_one for each variable in order.
inline ReductionHost raise_existential(ReductionHost host, const std::vector<std::string>& ws, const Limits& lim = {}) {
    for (const auto& w : ws) host = two_in_one(host, w, lim);
    return host;
}

}  // namespace nmr
