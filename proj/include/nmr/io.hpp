#pragma once

// Text formats.
//
// Formulas:  ~ binds tightest, then &, then |, then -> (right-associative).
//            Constants are `true` and `false`.
// Clauses:   lit ('|' lit)*  with lit = '~'? ident, or `false` for the empty clause.
//
// CNF file:
//     universe x1 x2 x3        (optional)
//     x1 | x3
//     ~x1 | ~x2
//
// Theory file:
//     universe a b             (optional)
//     w: a | ~b
//     default d1
//       prec: a                (omitted prec or just means true)
//       just: b
//       cons: b
//     end
//
// QBF file:
//     forall x1 x2
//     exists y1
//     matrix: (x1 | y1) & ~x2
//
// `#` starts a comment everywhere.

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "nmr/default_theory.hpp"
#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/qbf.hpp"
#include "nmr/universe.hpp"

namespace nmr {

struct ParseOptions {
    // Generated files use names with a double underscore; user input may not.
    bool allow_reserved = false;
};

class ParseError : public InputError {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& msg)
        : InputError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

namespace detail {

// Recursive-descent parser over one line (or one standalone string).
class FormulaParser {
public:
    FormulaParser(std::string_view text, std::size_t line, std::size_t col0, const ParseOptions& opt)
        : s_(text), line_(line), col0_(col0), opt_(opt) {}

    Formula parse_formula_all() {
        Formula f = parse_implication();
        expect_end();
        return f;
    }

    Clause parse_clause_all() {
        skip_ws();
        if (peek_word() == "false") {
            pos_ += 5;
            expect_end();
            return Clause{};
        }
        std::vector<Literal> lits;
        const std::size_t start = pos_;
        lits.push_back(parse_literal());
        while (skip_ws(), pos_ < s_.size() && s_[pos_] == '|') {
            ++pos_;
            lits.push_back(parse_literal());
        }
        expect_end();
        try {
            return Clause(lits);
        } catch (const InputError& e) {
            fail(start, e.what());
        }
    }

    std::vector<std::string> parse_identifiers_all() {
        std::vector<std::string> out;
        while (skip_ws(), pos_ < s_.size()) out.push_back(parse_identifier());
        return out;
    }

    [[noreturn]] void fail(std::size_t at, const std::string& msg) const { throw ParseError(line_, col0_ + at + 1, msg); }

private:
    void skip_ws() {
        while (pos_ < s_.size() && (s_[pos_] == ' ' || s_[pos_] == '\t' || s_[pos_] == '\r')) ++pos_;
    }
    static bool ident_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
    }
    std::string_view peek_word() const {
        std::size_t e = pos_;
        while (e < s_.size() && ident_char(s_[e])) ++e;
        return s_.substr(pos_, e - pos_);
    }
    void expect_end() {
        skip_ws();
        if (pos_ < s_.size()) fail(pos_, std::string("unexpected '") + s_[pos_] + "'");
    }

    std::string parse_identifier() {
        skip_ws();
        const std::size_t start = pos_;
        std::string w(peek_word());
        if (w.empty()) {
            if (pos_ >= s_.size()) fail(pos_, "expected identifier, found end of input");
            fail(pos_, std::string("expected identifier, found '") + s_[pos_] + "'");
        }
        if (!is_identifier(w)) fail(start, "'" + w + "' is not a valid identifier");
        if (!opt_.allow_reserved && is_reserved(w)) fail(start, "identifier '" + w + "' uses the reserved '__' infix");
        pos_ += w.size();
        return w;
    }

    Literal parse_literal() {
        skip_ws();
        bool positive = true;
        if (pos_ < s_.size() && s_[pos_] == '~') {
            positive = false;
            ++pos_;
        }
        return Literal{parse_identifier(), positive};
    }

    Formula parse_implication() {
        Formula lhs = parse_disjunction();
        skip_ws();
        if (s_.substr(pos_, 2) == "->") {
            pos_ += 2;
            return implies(lhs, parse_implication());
        }
        return lhs;
    }
    Formula parse_disjunction() {
        std::vector<Formula> parts{parse_conjunction()};
        while (skip_ws(), pos_ < s_.size() && s_[pos_] == '|') {
            ++pos_;
            parts.push_back(parse_conjunction());
        }
        return Formula::disjunction(std::move(parts));
    }
    Formula parse_conjunction() {
        std::vector<Formula> parts{parse_unary()};
        while (skip_ws(), pos_ < s_.size() && s_[pos_] == '&') {
            ++pos_;
            parts.push_back(parse_unary());
        }
        return Formula::conjunction(std::move(parts));
    }
    Formula parse_unary() {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == '~') {
            ++pos_;
            return ~parse_unary();
        }
        return parse_atom();
    }
    Formula parse_atom() {
        skip_ws();
        if (pos_ >= s_.size()) fail(pos_, "unexpected end of formula");
        if (s_[pos_] == '(') {
            const std::size_t open = pos_++;
            Formula f = parse_implication();
            skip_ws();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail(open, "unbalanced '('");
            ++pos_;
            return f;
        }
        std::string_view w = peek_word();
        if (w == "true") {
            pos_ += 4;
            return Formula::top();
        }
        if (w == "false") {
            pos_ += 5;
            return Formula::bottom();
        }
        return var(parse_identifier());
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_, col0_;
    ParseOptions opt_;
};

struct Line {
    std::size_t number;
    std::string_view text;  // comment stripped
};

inline std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t n = 1, start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view l = text.substr(start, end - start);
        if (auto h = l.find('#'); h != std::string_view::npos) l = l.substr(0, h);
        out.push_back({n++, l});
        start = end + 1;
    }
    return out;
}

inline bool blank(std::string_view s) { return s.find_first_not_of(" \t\r") == std::string_view::npos; }

inline std::size_t indent_of(std::string_view s) {
    std::size_t i = s.find_first_not_of(" \t\r");
    return i == std::string_view::npos ? s.size() : i;
}

// Splits "key: rest" (or "key rest") at the first ':' or blank after the keyword.
inline std::optional<std::pair<std::string_view, std::size_t>> keyword(std::string_view line, std::string_view key,
                                                                        bool colon) {
    const std::size_t i = indent_of(line);
    if (line.substr(i, key.size()) != key) return std::nullopt;
    std::size_t j = i + key.size();
    if (colon) {
        if (j >= line.size() || line[j] != ':') return std::nullopt;
        ++j;
    } else if (j < line.size() && line[j] != ' ' && line[j] != '\t') {
        return std::nullopt;
    }
    return std::make_pair(line.substr(j), j);
}

}  // namespace detail

inline Formula parse_formula(std::string_view text, const ParseOptions& opt = {}) {
    return detail::FormulaParser(text, 1, 0, opt).parse_formula_all();
}

inline Clause parse_clause(std::string_view text, const ParseOptions& opt = {}) {
    return detail::FormulaParser(text, 1, 0, opt).parse_clause_all();
}

struct CnfFile {
    CnfFormula formula;
    Universe universe;
};

namespace detail {
inline Universe parse_universe_line(const Line& l, std::string_view rest, std::size_t col, const ParseOptions& opt) {
    Universe u;
    FormulaParser p(rest, l.number, col, opt);
    for (const auto& v : p.parse_identifiers_all())
        if (!u.add(v)) throw ParseError(l.number, col + 1, "variable '" + v + "' listed twice in universe");
    return u;
}

inline void check_universe(const Universe& declared, const Universe& used, std::size_t line) {
    for (const auto& v : used.names())
        if (!declared.contains(v)) throw ParseError(line, 1, "variable '" + v + "' missing from universe");
}
}  // namespace detail

inline CnfFile parse_cnf(std::string_view text, const ParseOptions& opt = {}) {
    CnfFile out;
    std::optional<Universe> declared;
    std::size_t declared_line = 1;
    for (const auto& l : detail::split_lines(text)) {
        if (detail::blank(l.text)) continue;
        if (auto kw = detail::keyword(l.text, "universe", false)) {
            if (declared) throw ParseError(l.number, 1, "second universe line");
            if (!out.formula.empty()) throw ParseError(l.number, 1, "universe line must come first");
            declared = detail::parse_universe_line(l, kw->first, kw->second, opt);
            declared_line = l.number;
            continue;
        }
        out.formula.add(detail::FormulaParser(l.text, l.number, 0, opt).parse_clause_all());
    }
    Universe used = Universe::of(out.formula);
    if (declared) {
        detail::check_universe(*declared, used, declared_line);
        out.universe = *declared;
    } else {
        out.universe = used;
    }
    return out;
}

inline DefaultTheory parse_theory(std::string_view text, const ParseOptions& opt = {}) {
    std::optional<Universe> declared;
    std::size_t declared_line = 1;
    CnfFormula w;
    std::vector<Default> ds;
    std::optional<Default> open;
    std::size_t open_line = 0;
    bool seen_prec = false, seen_just = false, seen_cons = false;

    for (const auto& l : detail::split_lines(text)) {
        if (detail::blank(l.text)) continue;
        if (open) {
            if (auto kw = detail::keyword(l.text, "end", false); kw && detail::blank(kw->first)) {
                if (!seen_cons) throw ParseError(l.number, 1, "default '" + open->name + "' has no cons line");
                ds.push_back(*open);
                open.reset();
                continue;
            }
            bool matched = false;
            for (auto [key, slot, seen] : {std::tuple{"prec", &open->prec, &seen_prec},
                                           std::tuple{"just", &open->just, &seen_just},
                                           std::tuple{"cons", &open->cons, &seen_cons}}) {
                auto kw = detail::keyword(l.text, key, true);
                if (!kw) continue;
                if (*seen) throw ParseError(l.number, 1, std::string("repeated ") + key + " line");
                *seen = true;
                *slot = detail::FormulaParser(kw->first, l.number, kw->second, opt).parse_formula_all();
                matched = true;
                break;
            }
            if (!matched)
                throw ParseError(l.number, detail::indent_of(l.text) + 1, "expected prec:, just:, cons: or end");
            continue;
        }
        if (auto kw = detail::keyword(l.text, "universe", false)) {
            if (declared) throw ParseError(l.number, 1, "second universe line");
            declared = detail::parse_universe_line(l, kw->first, kw->second, opt);
            declared_line = l.number;
            continue;
        }
        if (auto kw = detail::keyword(l.text, "w", true)) {
            w.add(detail::FormulaParser(kw->first, l.number, kw->second, opt).parse_clause_all());
            continue;
        }
        if (auto kw = detail::keyword(l.text, "default", false)) {
            auto names = detail::FormulaParser(kw->first, l.number, kw->second, ParseOptions{true})
                             .parse_identifiers_all();
            if (names.size() != 1) throw ParseError(l.number, kw->second + 1, "expected one default name");
            for (const auto& d : ds)
                if (d.name == names[0])
                    throw ParseError(l.number, kw->second + 1, "duplicate default name '" + names[0] + "'");
            open = Default{names[0]};
            open_line = l.number;
            seen_prec = seen_just = seen_cons = false;
            continue;
        }
        throw ParseError(l.number, detail::indent_of(l.text) + 1, "expected universe, w: or default");
    }
    if (open) throw ParseError(open_line, 1, "default '" + open->name + "' is missing its end line");

    DefaultTheory t(ds, w);
    if (declared) {
        detail::check_universe(*declared, t.universe(), declared_line);
        return DefaultTheory(ds, w, *declared);
    }
    return t;
}

inline Qbf parse_qbf(std::string_view text, const ParseOptions& opt = {}) {
    Qbf q;
    bool have_matrix = false;
    for (const auto& l : detail::split_lines(text)) {
        if (detail::blank(l.text)) continue;
        if (have_matrix) throw ParseError(l.number, 1, "content after matrix line");
        std::optional<std::pair<std::string_view, std::size_t>> kw;
        if ((kw = detail::keyword(l.text, "forall", false)) || (kw = detail::keyword(l.text, "exists", false))) {
            const Quantifier qt = l.text.substr(detail::indent_of(l.text), 6) == "forall" ? Quantifier::forall
                                                                                          : Quantifier::exists;
            q.prefix.push_back({qt, detail::FormulaParser(kw->first, l.number, kw->second, opt).parse_identifiers_all()});
            continue;
        }
        if ((kw = detail::keyword(l.text, "matrix", true))) {
            q.matrix = detail::FormulaParser(kw->first, l.number, kw->second, opt).parse_formula_all();
            have_matrix = true;
            continue;
        }
        throw ParseError(l.number, detail::indent_of(l.text) + 1, "expected forall, exists or matrix:");
    }
    if (!have_matrix) throw ParseError(1, 1, "missing matrix line");
    q.validate(false);
    return q;
}

// ---- printing -------------------------------------------------------------

namespace detail {
inline int precedence(Formula::Kind k) {
    switch (k) {
        case Formula::Kind::implication: return 1;
        case Formula::Kind::disjunction: return 2;
        case Formula::Kind::conjunction: return 3;
        case Formula::Kind::negation: return 4;
        default: return 5;
    }
}

inline void print_formula(std::ostream& os, const Formula& f) {
    using K = Formula::Kind;
    auto sub = [&](const Formula& c, bool parens) {
        if (parens) os << '(';
        print_formula(os, c);
        if (parens) os << ')';
    };
    const int p = precedence(f.kind());
    switch (f.kind()) {
        case K::constant_true: os << "true"; break;
        case K::constant_false: os << "false"; break;
        case K::variable: os << f.name(); break;
        case K::negation:
            os << '~';
            sub(f.child(0), precedence(f.child(0).kind()) < p);
            break;
        case K::conjunction:
        case K::disjunction: {
            const char* sep = f.kind() == K::conjunction ? " & " : " | ";
            for (std::size_t i = 0; i < f.children().size(); ++i) {
                if (i) os << sep;
                sub(f.child(i), precedence(f.child(i).kind()) <= p);
            }
            break;
        }
        case K::implication:
            sub(f.child(0), precedence(f.child(0).kind()) <= p);
            os << " -> ";
            sub(f.child(1), precedence(f.child(1).kind()) < p);
            break;
    }
}
}  // namespace detail

inline std::string to_string(const Formula& f) {
    std::ostringstream os;
    detail::print_formula(os, f);
    return os.str();
}

inline std::string to_string(const Literal& l) { return (l.positive ? "" : "~") + l.var; }

inline std::string to_string(const Clause& c) {
    if (c.empty()) return "false";
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (i) s += " | ";
        s += to_string(c.literals()[i]);
    }
    return s;
}

inline std::string to_string(const Model& m, const Universe& u) {
    std::string s = "{";
    bool first = true;
    for (const auto& v : true_vars(m, u)) {
        if (!first) s += ", ";
        s += v;
        first = false;
    }
    return s + "}";
}

inline std::string print_cnf(const CnfFormula& f, const Universe& u) {
    std::ostringstream os;
    os << "universe";
    for (const auto& v : u.names()) os << ' ' << v;
    os << '\n';
    for (const auto& c : f) os << to_string(c) << '\n';
    return os.str();
}

inline std::string print_theory(const DefaultTheory& t) {
    std::ostringstream os;
    os << "universe";
    for (const auto& v : t.universe().names()) os << ' ' << v;
    os << '\n';
    for (const auto& c : t.background()) os << "w: " << to_string(c) << '\n';
    for (const auto& d : t.defaults()) {
        os << "default " << d.name << '\n';
        os << "  prec: " << to_string(d.prec) << '\n';
        os << "  just: " << to_string(d.just) << '\n';
        os << "  cons: " << to_string(d.cons) << '\n';
        os << "end\n";
    }
    return os.str();
}

inline std::string print_qbf(const Qbf& q) {
    std::ostringstream os;
    for (const auto& b : q.prefix) {
        os << (b.q == Quantifier::forall ? "forall" : "exists");
        for (const auto& v : b.vars) os << ' ' << v;
        os << '\n';
    }
    os << "matrix: " << to_string(q.matrix) << '\n';
    return os.str();
}

inline std::string to_string(const ProcessSeq& seq, const DefaultTheory& t) {
    std::string s = "[";
    for (std::size_t i = 0; i < seq.size(); ++i) {
        if (i) s += ", ";
        s += t[seq[i]].name;
    }
    return s + "]";
}

}  // namespace nmr
