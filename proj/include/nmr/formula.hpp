#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nmr/error.hpp"

namespace nmr {

inline bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s[0])) return false;
    for (char c : s)
        if (!alpha(c) && !digit(c)) return false;
    return s != "true" && s != "false" && s != "universe" && s != "default" && s != "end" &&
           s != "forall" && s != "exists";
}

// Generated names (fresh gadget atoms, primed copies, polarity markers) all
// contain a double underscore, so user input may not.
inline bool is_reserved(const std::string& s) { return s.find("__") != std::string::npos; }

struct Literal {
    std::string var;
    bool positive = true;

    Literal negated() const { return {var, !positive}; }
    auto operator<=>(const Literal&) const = default;
};

inline Literal pos(std::string v) { return {std::move(v), true}; }
inline Literal neg(std::string v) { return {std::move(v), false}; }

// Disjunction of literals. Keeps the order literals were given in (for
// printing) but compares as a set. Tautologies are rejected.
class Clause {
public:
    Clause() = default;
    Clause(std::initializer_list<Literal> lits) : Clause(std::vector<Literal>(lits)) {}
    explicit Clause(std::vector<Literal> lits) {
        for (auto& l : lits) {
            if (std::find(lits_.begin(), lits_.end(), l) != lits_.end()) continue;
            if (std::find(lits_.begin(), lits_.end(), l.negated()) != lits_.end())
                throw InputError("tautological clause on variable '" + l.var + "'");
            lits_.push_back(std::move(l));
        }
        key_ = lits_;
        std::sort(key_.begin(), key_.end());
    }

    const std::vector<Literal>& literals() const { return lits_; }
    std::size_t size() const { return lits_.size(); }
    bool empty() const { return lits_.empty(); }
    bool contains(const Literal& l) const { return std::binary_search(key_.begin(), key_.end(), l); }
    bool is_positive() const {
        return std::all_of(lits_.begin(), lits_.end(), [](const Literal& l) { return l.positive; });
    }
    bool has_negative() const { return !is_positive(); }

    bool operator==(const Clause& o) const { return key_ == o.key_; }
    bool operator<(const Clause& o) const { return key_ < o.key_; }

private:
    std::vector<Literal> lits_;
    std::vector<Literal> key_;
};

// Conjunction of clauses; a set that remembers insertion order. Empty means true.
class CnfFormula {
public:
    CnfFormula() = default;
    CnfFormula(std::initializer_list<Clause> cs) {
        for (const auto& c : cs) add(c);
    }
    explicit CnfFormula(const std::vector<Clause>& cs) {
        for (const auto& c : cs) add(c);
    }

    bool add(const Clause& c) {
        if (contains(c)) return false;
        clauses_.push_back(c);
        return true;
    }
    bool contains(const Clause& c) const { return index_of(c).has_value(); }
    std::optional<std::size_t> index_of(const Clause& c) const {
        for (std::size_t i = 0; i < clauses_.size(); ++i)
            if (clauses_[i] == c) return i;
        return std::nullopt;
    }
    CnfFormula without(const Clause& c) const {
        CnfFormula r;
        for (const auto& d : clauses_)
            if (!(d == c)) r.add(d);
        return r;
    }
    CnfFormula with(const Clause& c) const {
        CnfFormula r = *this;
        r.add(c);
        return r;
    }
    // Clauses whose index bit is set in mask.
    CnfFormula subset(std::uint64_t mask) const {
        CnfFormula r;
        for (std::size_t i = 0; i < clauses_.size(); ++i)
            if (mask >> i & 1U) r.add(clauses_[i]);
        return r;
    }

    const std::vector<Clause>& clauses() const { return clauses_; }
    std::size_t size() const { return clauses_.size(); }
    bool empty() const { return clauses_.empty(); }
    const Clause& operator[](std::size_t i) const { return clauses_[i]; }
    auto begin() const { return clauses_.begin(); }
    auto end() const { return clauses_.end(); }

    bool operator==(const CnfFormula& o) const {
        if (size() != o.size()) return false;
        return std::all_of(clauses_.begin(), clauses_.end(), [&](const Clause& c) { return o.contains(c); });
    }

private:
    std::vector<Clause> clauses_;
};

// Immutable propositional formula tree with shared structure. Conjunction and
// disjunction are n-ary; equality is structural.
class Formula {
public:
    enum class Kind : std::uint8_t { constant_true, constant_false, variable, negation, conjunction, disjunction, implication };

    Formula() : Formula(make(Kind::constant_true, {}, {})) {}

    static Formula top() { return make(Kind::constant_true, {}, {}); }
    static Formula bottom() { return make(Kind::constant_false, {}, {}); }
    static Formula variable(std::string name) { return make(Kind::variable, std::move(name), {}); }
    static Formula negation(Formula f) { return make(Kind::negation, {}, {std::move(f)}); }
    static Formula implication(Formula a, Formula b) { return make(Kind::implication, {}, {std::move(a), std::move(b)}); }
    // Zero operands give the unit, one operand is returned unchanged.
    static Formula conjunction(std::vector<Formula> fs) {
        if (fs.empty()) return top();
        if (fs.size() == 1) return fs.front();
        return make(Kind::conjunction, {}, std::move(fs));
    }
    static Formula disjunction(std::vector<Formula> fs) {
        if (fs.empty()) return bottom();
        if (fs.size() == 1) return fs.front();
        return make(Kind::disjunction, {}, std::move(fs));
    }

    Kind kind() const { return node_->kind; }
    const std::string& name() const { return node_->name; }
    const std::vector<Formula>& children() const { return node_->children; }
    const Formula& child(std::size_t i) const { return node_->children[i]; }

    bool is_true() const { return kind() == Kind::constant_true; }
    bool is_false() const { return kind() == Kind::constant_false; }

    bool operator==(const Formula& o) const {
        if (node_ == o.node_) return true;
        return kind() == o.kind() && name() == o.name() && children() == o.children();
    }

    std::size_t depth() const {
        std::size_t d = 0;
        for (const auto& c : children()) d = std::max(d, c.depth());
        return d + 1;
    }

private:
    struct Node {
        Kind kind;
        std::string name;
        std::vector<Formula> children;
    };
    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    static Formula make(Kind k, std::string name, std::vector<Formula> ch) {
        return Formula(std::make_shared<const Node>(Node{k, std::move(name), std::move(ch)}));
    }

    std::shared_ptr<const Node> node_;
};

inline Formula var(const std::string& name) { return Formula::variable(name); }
inline Formula operator~(const Formula& f) { return Formula::negation(f); }
inline Formula operator&(const Formula& a, const Formula& b) { return Formula::conjunction({a, b}); }
inline Formula operator|(const Formula& a, const Formula& b) { return Formula::disjunction({a, b}); }
inline Formula implies(const Formula& a, const Formula& b) { return Formula::implication(a, b); }

// Conjunction that drops `true` operands and splices nested conjunctions. Used
// by constructions where a guard may be conjoined to a trivial precondition.
inline Formula conj_flat(const std::vector<Formula>& fs) {
    std::vector<Formula> out;
    auto add = [&](const Formula& f) {
        if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
    };
    for (const auto& f : fs) {
        if (f.is_true()) continue;
        if (f.kind() == Formula::Kind::conjunction)
            for (const auto& c : f.children()) add(c);
        else
            add(f);
    }
    return Formula::conjunction(std::move(out));
}

inline Formula literal_formula(const Literal& l) { return l.positive ? var(l.var) : ~var(l.var); }

inline Formula clause_formula(const Clause& c) {
    std::vector<Formula> fs;
    for (const auto& l : c.literals()) fs.push_back(literal_formula(l));
    return Formula::disjunction(std::move(fs));
}

inline Formula cnf_formula(const CnfFormula& cnf) {
    std::vector<Formula> fs;
    for (const auto& c : cnf) fs.push_back(clause_formula(c));
    return Formula::conjunction(std::move(fs));
}

// ¬γ as a conjunction of the complementary literals.
inline Formula negate_clause(const Clause& c) {
    std::vector<Formula> fs;
    for (const auto& l : c.literals()) fs.push_back(literal_formula(l.negated()));
    return Formula::conjunction(std::move(fs));
}

// ¬γ as a set of unit clauses.
inline CnfFormula negate_clause_cnf(const Clause& c) {
    CnfFormula r;
    for (const auto& l : c.literals()) r.add(Clause{l.negated()});
    return r;
}

// Reads a literal back from a formula of the form x or ~x.
inline std::optional<Literal> as_literal(const Formula& f) {
    if (f.kind() == Formula::Kind::variable) return Literal{f.name(), true};
    if (f.kind() == Formula::Kind::negation && f.child(0).kind() == Formula::Kind::variable)
        return Literal{f.child(0).name(), false};
    return std::nullopt;
}

// Reads a clause back from a literal or a disjunction of literals.
inline std::optional<Clause> as_clause(const Formula& f) {
    if (f.is_false()) return Clause{};
    std::vector<Literal> lits;
    if (f.kind() == Formula::Kind::disjunction) {
        for (const auto& c : f.children()) {
            auto l = as_literal(c);
            if (!l) return std::nullopt;
            lits.push_back(*l);
        }
    } else {
        auto l = as_literal(f);
        if (!l) return std::nullopt;
        lits.push_back(*l);
    }
    return Clause(lits);
}

// Syntactic CNF view: a clause or a conjunction of clauses.
inline std::optional<CnfFormula> as_cnf(const Formula& f) {
    CnfFormula r;
    if (f.is_true()) return r;
    if (f.kind() == Formula::Kind::conjunction) {
        for (const auto& c : f.children()) {
            auto cl = as_clause(c);
            if (!cl) return std::nullopt;
            r.add(*cl);
        }
        return r;
    }
    auto cl = as_clause(f);
    if (!cl) return std::nullopt;
    r.add(*cl);
    return r;
}

namespace detail {
inline void collect_vars(const Formula& f, std::vector<std::string>& out) {
    if (f.kind() == Formula::Kind::variable) {
        if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
        return;
    }
    for (const auto& c : f.children()) collect_vars(c, out);
}
}  // namespace detail

// Variables in order of first occurrence.
inline std::vector<std::string> variables(const Formula& f) {
    std::vector<std::string> out;
    detail::collect_vars(f, out);
    return out;
}

inline std::vector<std::string> variables(const Clause& c) {
    std::vector<std::string> out;
    for (const auto& l : c.literals())
        if (std::find(out.begin(), out.end(), l.var) == out.end()) out.push_back(l.var);
    return out;
}

inline std::vector<std::string> variables(const CnfFormula& cnf) {
    std::vector<std::string> out;
    for (const auto& c : cnf)
        for (const auto& l : c.literals())
            if (std::find(out.begin(), out.end(), l.var) == out.end()) out.push_back(l.var);
    return out;
}

inline bool mentions(const Formula& f, const std::string& v) {
    if (f.kind() == Formula::Kind::variable) return f.name() == v;
    return std::any_of(f.children().begin(), f.children().end(), [&](const Formula& c) { return mentions(c, v); });
}

inline bool mentions(const CnfFormula& cnf, const std::string& v) {
    for (const auto& c : cnf)
        if (c.contains(pos(v)) || c.contains(neg(v))) return true;
    return false;
}

// Substitutes the assigned variables and folds constants.
inline Formula restrict(const Formula& f, const std::map<std::string, bool>& assignment) {
    using K = Formula::Kind;
    switch (f.kind()) {
        case K::constant_true:
        case K::constant_false:
            return f;
        case K::variable: {
            auto it = assignment.find(f.name());
            if (it == assignment.end()) return f;
            return it->second ? Formula::top() : Formula::bottom();
        }
        case K::negation: {
            Formula c = restrict(f.child(0), assignment);
            if (c.is_true()) return Formula::bottom();
            if (c.is_false()) return Formula::top();
            return ~c;
        }
        case K::conjunction:
        case K::disjunction: {
            const bool is_and = f.kind() == K::conjunction;
            std::vector<Formula> kept;
            for (const auto& ch : f.children()) {
                Formula c = restrict(ch, assignment);
                if (is_and ? c.is_false() : c.is_true()) return c;
                if (is_and ? c.is_true() : c.is_false()) continue;
                kept.push_back(c);
            }
            return is_and ? Formula::conjunction(std::move(kept)) : Formula::disjunction(std::move(kept));
        }
        case K::implication: {
            Formula a = restrict(f.child(0), assignment);
            Formula b = restrict(f.child(1), assignment);
            if (a.is_false() || b.is_true()) return Formula::top();
            if (a.is_true()) return b;
            if (b.is_false()) return ~a;
            return implies(a, b);
        }
    }
    return f;
}

}  // namespace nmr
