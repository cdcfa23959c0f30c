#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "nmr/error.hpp"
#include "nmr/formula.hpp"
#include "nmr/model_set.hpp"
#include "nmr/universe.hpp"

namespace nmr {

// A default rule prec : just / cons.
struct Default {
    std::string name;
    Formula prec = Formula::top();
    Formula just = Formula::top();
    Formula cons = Formula::top();

    bool is_categorical() const { return prec.is_true(); }
    bool is_normal() const { return just == cons; }
    bool operator==(const Default&) const = default;
};

// Default theory ⟨D, W⟩ over a universe. Default order matters: processes
// and witnesses are reported in terms of default indices.
class DefaultTheory {
public:
    DefaultTheory() = default;
    // An empty universe is replaced by the variables in order of appearance
    // (background first, then each default's prec, just, cons).
    DefaultTheory(std::vector<Default> defaults, CnfFormula background, Universe universe = {})
        : defaults_(std::move(defaults)), background_(std::move(background)), universe_(std::move(universe)) {
        std::set<std::string> names;
        for (const auto& d : defaults_) {
            if (d.name.empty()) throw InputError("default with empty name");
            if (!names.insert(d.name).second) throw InputError("duplicate default name '" + d.name + "'");
        }
        Universe used = Universe::of(background_);
        for (const auto& d : defaults_) {
            used.add_all(variables(d.prec));
            used.add_all(variables(d.just));
            used.add_all(variables(d.cons));
        }
        if (universe_.empty()) {
            universe_ = used;
        } else {
            for (const auto& v : used.names())
                if (!universe_.contains(v)) throw InputError("variable '" + v + "' missing from universe");
        }
    }

    const std::vector<Default>& defaults() const { return defaults_; }
    const Default& operator[](std::size_t i) const { return defaults_[i]; }
    std::size_t size() const { return defaults_.size(); }
    const CnfFormula& background() const { return background_; }
    const Universe& universe() const { return universe_; }

    std::size_t index_of(const std::string& name) const {
        for (std::size_t i = 0; i < defaults_.size(); ++i)
            if (defaults_[i].name == name) return i;
        throw InputError("unknown default '" + name + "'");
    }

    DefaultTheory with_background(CnfFormula w) const { return {defaults_, std::move(w), universe_}; }
    DefaultTheory with_defaults(std::vector<Default> ds) const { return {std::move(ds), background_, universe_}; }
    DefaultTheory with_universe(Universe u) const { return {defaults_, background_, std::move(u)}; }
    // Keeps the defaults whose index bit is set in mask.
    DefaultTheory restrict_defaults(std::uint64_t mask) const {
        std::vector<Default> ds;
        for (std::size_t i = 0; i < defaults_.size(); ++i)
            if (mask >> i & 1U) ds.push_back(defaults_[i]);
        return with_defaults(std::move(ds));
    }
    DefaultTheory without_default(std::size_t i) const {
        return restrict_defaults(~(std::uint64_t{1} << i));
    }

    bool operator==(const DefaultTheory& o) const {
        return defaults_ == o.defaults_ && background_ == o.background_ && universe_ == o.universe_;
    }

private:
    std::vector<Default> defaults_;
    CnfFormula background_;
    Universe universe_;
};

// A sequence of distinct default indices.
using ProcessSeq = std::vector<std::size_t>;

enum class Semantics { reiter, justified, constrained, rational };
enum class EquivKind { mutual, consequence, faithful };

inline constexpr Semantics all_semantics[] = {Semantics::reiter, Semantics::justified, Semantics::constrained,
                                              Semantics::rational};
inline constexpr EquivKind all_equiv_kinds[] = {EquivKind::mutual, EquivKind::consequence, EquivKind::faithful};

inline std::string_view to_string(Semantics s) {
    switch (s) {
        case Semantics::reiter: return "reiter";
        case Semantics::justified: return "justified";
        case Semantics::constrained: return "constrained";
        case Semantics::rational: return "rational";
    }
    return "?";
}

inline std::string_view to_string(EquivKind k) {
    switch (k) {
        case EquivKind::mutual: return "mutual";
        case EquivKind::consequence: return "consequence";
        case EquivKind::faithful: return "faithful";
    }
    return "?";
}

inline Semantics parse_semantics(std::string_view s) {
    for (auto v : all_semantics)
        if (to_string(v) == s) return v;
    throw InputError("unknown semantics '" + std::string(s) + "'");
}

inline EquivKind parse_equiv_kind(std::string_view s) {
    for (auto v : all_equiv_kinds)
        if (to_string(v) == s) return v;
    throw InputError("unknown equivalence '" + std::string(s) + "'");
}

// W ∧ cons(Π) together with the processes that generate it.
struct Extension {
    Formula formula;
    ModelSet models;
    std::vector<ProcessSeq> generating_processes;
};

}  // namespace nmr
