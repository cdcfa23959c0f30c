#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/logic.hpp"
#include "nmr/universe.hpp"

namespace nmr {

enum class Quantifier { forall, exists };

struct QuantBlock {
    Quantifier q;
    std::vector<std::string> vars;
    bool operator==(const QuantBlock&) const = default;
};

// Prenex QBF. Blocks are kept as written; normalized() merges neighbours.
struct Qbf {
    std::vector<QuantBlock> prefix;
    Formula matrix;

    std::vector<std::string> bound_vars() const {
        std::vector<std::string> out;
        for (const auto& b : prefix) out.insert(out.end(), b.vars.begin(), b.vars.end());
        return out;
    }

    // Drops empty blocks and merges adjacent blocks with the same quantifier.
    Qbf normalized() const {
        Qbf r{{}, matrix};
        for (const auto& b : prefix) {
            if (b.vars.empty()) continue;
            if (!r.prefix.empty() && r.prefix.back().q == b.q)
                r.prefix.back().vars.insert(r.prefix.back().vars.end(), b.vars.begin(), b.vars.end());
            else
                r.prefix.push_back(b);
        }
        return r;
    }

    // Throws on repeated bound variables, and on free matrix variables when
    // the formula must be closed.
    void validate(bool require_closed) const {
        Universe seen;
        for (const auto& v : bound_vars()) {
            if (!is_identifier(v)) throw InputError("invalid variable name '" + v + "'");
            if (!seen.add(v)) throw InputError("variable '" + v + "' bound twice");
        }
        if (require_closed)
            for (const auto& v : variables(matrix))
                if (!seen.contains(v)) throw InputError("free variable '" + v + "' in matrix");
    }

    bool operator==(const Qbf&) const = default;
};

// Splits a QBF whose normalized prefix matches the given quantifier pattern;
// pattern blocks may be empty. Returns one variable list per pattern entry.
inline std::vector<std::vector<std::string>> match_prefix(const Qbf& q, const std::vector<Quantifier>& pattern) {
    Qbf n = q.normalized();
    std::vector<std::vector<std::string>> out(pattern.size());
    std::size_t bi = 0;
    for (std::size_t pi = 0; pi < pattern.size() && bi < n.prefix.size(); ++pi)
        if (n.prefix[bi].q == pattern[pi]) out[pi] = n.prefix[bi++].vars;
    if (bi != n.prefix.size()) throw InputError("quantifier prefix has the wrong shape");
    return out;
}

// Truth value by full expansion over the bound variables.
inline bool eval_qbf(const Qbf& q, const Limits& lim = {}) {
    q.validate(true);
    const std::vector<std::string> vars = q.bound_vars();
    lim.check_qbf_vars(vars.size());
    const Universe u(vars);
    const ModelSet table = models(q.matrix, u, lim);
    std::vector<Quantifier> quant;
    for (const auto& b : q.prefix)
        for (std::size_t i = 0; i < b.vars.size(); ++i) quant.push_back(b.q);
    const std::size_t n = vars.size();
    std::function<bool(std::size_t, std::uint32_t)> go = [&](std::size_t i, std::uint32_t idx) -> bool {
        if (i == n) return table.contains(Model{idx});
        const bool lo = go(i + 1, idx);
        if (quant[i] == Quantifier::exists ? lo : !lo) return lo;
        return go(i + 1, idx | var_bit(i, n));
    };
    return go(0, 0);
}

}  // namespace nmr
