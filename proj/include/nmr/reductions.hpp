#pragma once

// Polynomial reductions from QBF validity to redundancy problems. Every
// generated atom lives in the reserved "__g_" namespace, so QBF variables
// never collide with gadget atoms.

#include <cstddef>
#include <string>
#include <vector>

#include "nmr/default_theory.hpp"
#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/qbf.hpp"
#include "nmr/transforms.hpp"
#include "nmr/universe.hpp"

namespace nmr {

struct CircClauseReduction {
    CnfFormula pi;
    Clause gamma;
    Universe universe;
};

// ∀X∃Y.Γ with Γ in CNF. The QBF is valid iff γ is CIRC-redundant in Π.
inline CircClauseReduction reduce_qbf2_to_circ_clause(const Qbf& q) {
    q.validate(true);
    auto blocks = match_prefix(q, {Quantifier::forall, Quantifier::exists});
    const auto& xs = blocks[0];
    const auto& ys = blocks[1];
    auto gamma_cnf = as_cnf(q.matrix);
    if (!gamma_cnf) throw InputError("matrix is not in CNF");

    Universe u(xs);
    u.add_all(ys);
    FreshNamer fresh(u);
    const std::string a = fresh.tagged("a");
    std::vector<std::string> ps;
    for (std::size_t i = 1; i <= xs.size(); ++i) ps.push_back(fresh.tagged("p" + std::to_string(i)));

    CircClauseReduction r;
    for (std::size_t i = 0; i < xs.size(); ++i) r.pi.add(Clause{pos(xs[i]), pos(ps[i])});
    for (const auto& y : ys) r.pi.add(Clause{neg(a), pos(y)});
    for (const auto& delta : *gamma_cnf) {
        std::vector<Literal> lits{pos(a)};
        lits.insert(lits.end(), delta.literals().begin(), delta.literals().end());
        r.pi.add(Clause(lits));
    }
    std::vector<Literal> g{neg(a)};
    for (const auto& y : ys) g.push_back(neg(y));
    r.gamma = Clause(g);
    r.pi.add(r.gamma);
    r.universe = u;
    return r;
}

struct DlClauseReduction {
    ReductionHost host;  // f_default carries F ∧ a in its justification
    Clause gamma;        // the unit clause a
};

// ∀X∃Y.F. The QBF is valid iff a is redundant (Reiter, faithful). Variables
// of F that the prefix does not bind are kept free, which is how raise
// composes on top of this reduction.
inline DlClauseReduction reduce_qbf2_to_dl_clause(const Qbf& q) {
    q.validate(false);
    auto blocks = match_prefix(q, {Quantifier::forall, Quantifier::exists});
    const auto& xs = blocks[0];
    Universe u(xs);
    u.add_all(blocks[1]);
    u.add_all(variables(q.matrix));
    FreshNamer fresh(u);
    const std::string a = fresh.tagged("a");
    const Formula A = var(a);

    std::vector<Default> ds;
    for (const auto& x : xs) {
        ds.push_back(Default{x + "_true", Formula::top(), var(x), var(x)});
        ds.push_back(Default{x + "_false", Formula::top(), ~var(x), ~var(x)});
    }
    ds.push_back(Default{unique_default_name(ds, "matrix"), Formula::top(), q.matrix & A, A});
    const Clause gamma{pos(a)};
    DlClauseReduction r{ReductionHost{DefaultTheory(ds, CnfFormula{gamma}, u), ds.size() - 1}, gamma};
    return r;
}

// ∃W∀X∃Y.F: the ∀∃ reduction of the inner formula, raised once per
// variable of the leading existential block.
inline ReductionHost reduce_qbf3_raised_dl(const Qbf& q, const Limits& lim = {}) {
    q.validate(true);
    auto blocks = match_prefix(q, {Quantifier::exists, Quantifier::forall, Quantifier::exists});
    Qbf inner{{{Quantifier::forall, blocks[1]}, {Quantifier::exists, blocks[2]}}, q.matrix};
    return raise_existential(reduce_qbf2_to_dl_clause(inner).host, blocks[0], lim);
}

struct DlConsReduction {
    DefaultTheory with_a;     // ⟨D, {a}⟩
    DefaultTheory without_a;  // ⟨D, ∅⟩
};

// ∃X∀Y∃Z.F. The QBF is valid iff the two theories are not
// consequence-equivalent under Reiter semantics.
inline DlConsReduction reduce_qbf3_to_dl_cons(const Qbf& q) {
    q.validate(true);
    auto blocks = match_prefix(q, {Quantifier::exists, Quantifier::forall, Quantifier::exists});
    const auto& xs = blocks[0];
    const auto& ys = blocks[1];
    Universe u(q.bound_vars());
    FreshNamer fresh(u);
    const Formula a = var(fresh.tagged("a")), b = var(fresh.tagged("b")), c = var(fresh.tagged("c")),
                  d = var(fresh.tagged("d"));
    std::vector<Formula> h, l;
    for (std::size_t i = 1; i <= xs.size(); ++i) h.push_back(var(fresh.tagged("h" + std::to_string(i))));
    for (std::size_t i = 1; i <= ys.size(); ++i) l.push_back(var(fresh.tagged("l" + std::to_string(i))));
    const Formula H = Formula::conjunction(h);

    std::vector<Default> ds;
    auto add = [&](const std::string& name, Formula pre, Formula just, Formula cons) {
        ds.push_back(Default{name, pre, just, cons});
    };
    for (std::size_t i = 0; i < xs.size(); ++i) {
        add(xs[i] + "_true", Formula::top(), var(xs[i]), var(xs[i]) & h[i]);
        add(xs[i] + "_false", Formula::top(), ~var(xs[i]), ~var(xs[i]) & h[i]);
    }
    add("d1", H, ~b & c, a & c);
    add("d2", H, ~b & ~c, a & ~c);
    add("d3", conj_flat({H, a}), b & c, b | c);
    add("d4", conj_flat({H, a, b | c}), b & ~c, b);
    std::vector<Formula> none_y{d};
    for (const auto& y : ys) none_y.push_back(~var(y));
    add("close_b", b, Formula::top(), Formula::conjunction(none_y));
    for (int side = 0; side < 2; ++side) {
        const Formula guard = side == 0 ? ~c : c;
        const std::string tag = side == 0 ? "_nc" : "_c";
        for (std::size_t i = 0; i < ys.size(); ++i) {
            const Formula y = var(ys[i]);
            add(ys[i] + "_true" + tag, guard, ~d & y, d | (y & l[i]));
            add(ys[i] + "_false" + tag, guard, ~d & ~y, d | (~y & l[i]));
        }
    }
    add("matrix", d | Formula::conjunction(l), ~d & q.matrix, ~d);

    return {DefaultTheory(ds, CnfFormula{Clause{pos(a.name())}}, u), DefaultTheory(ds, CnfFormula{}, u)};
}

// ∃X∀Y∃Z.F. The QBF is valid iff the background is redundant (Reiter,
// faithful). The outer existential is chosen by which of s_i, r_i survive.
inline DefaultTheory reduce_qbf3_to_dl_formula(const Qbf& q) {
    q.validate(true);
    auto blocks = match_prefix(q, {Quantifier::exists, Quantifier::forall, Quantifier::exists});
    const auto& xs = blocks[0];
    const auto& ys = blocks[1];
    Universe u(q.bound_vars());
    FreshNamer fresh(u);
    std::vector<Formula> s, r, p, h;
    for (std::size_t i = 1; i <= xs.size(); ++i) s.push_back(var(fresh.tagged("s" + std::to_string(i))));
    for (std::size_t i = 1; i <= xs.size(); ++i) r.push_back(var(fresh.tagged("r" + std::to_string(i))));
    const Formula a = var(fresh.tagged("a"));
    for (std::size_t i = 1; i <= ys.size(); ++i) h.push_back(var(fresh.tagged("h" + std::to_string(i))));
    for (std::size_t i = 1; i <= xs.size(); ++i) p.push_back(var(fresh.tagged("p" + std::to_string(i))));

    CnfFormula w;
    for (const auto& f : s) w.add(Clause{pos(f.name())});
    for (const auto& f : r) w.add(Clause{pos(f.name())});
    const Formula all_w = cnf_formula(w);

    std::vector<Default> ds;
    auto add = [&](const std::string& name, Formula pre, Formula just, Formula cons) {
        ds.push_back(Default{name, pre, just, cons});
    };
    const std::size_t n = xs.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const std::string tag = std::to_string(i + 1) + "_" + std::to_string(j + 1);
            add("both_s" + tag, s[i] & r[i], ~s[j], a);
            add("both_r" + tag, s[i] & r[i], ~r[j], a);
        }
    for (std::size_t i = 0; i < n; ++i) add("neither" + std::to_string(i + 1), Formula::top(), ~s[i] & ~r[i], a);
    for (std::size_t i = 0; i < ys.size(); ++i) {
        const Formula y = var(ys[i]);
        add(ys[i] + "_true", Formula::top(), y, y & h[i]);
        add(ys[i] + "_false", Formula::top(), ~y, ~y & h[i]);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Formula x = var(xs[i]);
        add(xs[i] + "_true", Formula::top(), x, p[i] & x);
        add(xs[i] + "_false", Formula::top(), ~x, p[i] & ~x);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const Formula x = var(xs[i]);
        add(xs[i] + "_restore_r", x & r[i], Formula::top(), all_w);
        add(xs[i] + "_restore_s", ~x & s[i], Formula::top(), all_w);
    }
    std::vector<Formula> guard = p;
    guard.insert(guard.end(), h.begin(), h.end());
    add("matrix", Formula::conjunction(guard), q.matrix, all_w);
    return DefaultTheory(ds, w, u);
}

}  // namespace nmr
