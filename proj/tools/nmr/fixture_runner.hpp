#pragma once

// Runs a fixture file (.thy or .cnf) against its .expect.json sidecar.

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "nmr/nmr.hpp"

namespace nmr::cli {

struct FixtureSource {
    std::string name;  // file name, e.g. clause_vs_theory.thy
    std::string text;
};

struct CheckOutcome {
    std::string fixture;
    std::string label;
    bool passed = false;
    std::string detail;
};

namespace detail {

using json = nlohmann::json;

inline std::vector<std::string> string_list(const json& j, const char* key, std::vector<std::string> fallback) {
    if (!j.contains(key)) return fallback;
    if (j[key].is_string()) return {j[key].get<std::string>()};
    return j[key].get<std::vector<std::string>>();
}

inline RedundancyStrategy parse_strategy(const std::string& s) {
    if (s == "definitional") return RedundancyStrategy::definitional;
    if (s == "in-pi") return RedundancyStrategy::containment_in_pi;
    if (s == "in-rest") return RedundancyStrategy::containment_in_rest;
    if (s == "positive") return RedundancyStrategy::positive_shortcut;
    throw InputError("unknown strategy '" + s + "'");
}

inline const ParseOptions& generated() {
    static const ParseOptions o{true};
    return o;
}

inline CnfFormula clause_list(const json& arr) {
    CnfFormula f;
    for (const auto& c : arr) f.add(parse_clause(c.get<std::string>(), generated()));
    return f;
}

// Applies the optional "background" and "defaults" overrides of a check.
inline DefaultTheory adjust(const DefaultTheory& t, const json& check, const char* bg_key, const char* ds_key) {
    DefaultTheory r = t;
    if (check.contains(ds_key)) {
        std::uint64_t mask = 0;
        for (const auto& n : check[ds_key]) mask |= std::uint64_t{1} << t.index_of(n.get<std::string>());
        r = r.restrict_defaults(mask);
    }
    if (check.contains(bg_key)) r = r.with_background(clause_list(check[bg_key]));
    return r;
}

inline bool same_extension_set(const std::vector<Extension>& got, const std::vector<std::string>& want,
                               const Universe& u, std::string& detail) {
    std::vector<ModelSet> expected;
    for (const auto& f : want) expected.push_back(models(parse_formula(f, generated()), u));
    bool ok = got.size() == expected.size();
    for (const auto& e : expected)
        if (std::none_of(got.begin(), got.end(), [&](const Extension& x) { return x.models == e; })) ok = false;
    if (!ok) {
        detail = "got [";
        for (std::size_t i = 0; i < got.size(); ++i) detail += (i ? ", " : "") + to_string(got[i].formula);
        detail += "]";
    }
    return ok;
}

inline std::vector<CheckOutcome> run_theory_check(const std::string& fixture, const DefaultTheory& t, const json& check,
                                                  const Limits& lim) {
    std::vector<CheckOutcome> out;
    const std::string kind = check.at("check").get<std::string>();
    EngineOptions opt{lim, check.value("rational_joint_success", true)};
    const auto sems = string_list(check, "semantics", {"reiter"});
    for (const auto& sname : sems) {
        const Semantics sem = parse_semantics(sname);
        const EquivKind eq = parse_equiv_kind(check.value("equivalence", std::string("faithful")));
        CheckOutcome o{fixture, kind + " [" + sname + (check.contains("equivalence") ? ", " + std::string(to_string(eq)) : std::string()) + "]", false, ""};
        const DefaultTheory th = adjust(t, check, "background", "defaults");
        if (kind == "extensions") {
            o.passed = same_extension_set(extensions(th, sem, opt), check.at("expect").get<std::vector<std::string>>(),
                                          th.universe(), o.detail);
        } else if (kind == "processes") {
            std::vector<std::vector<std::string>> got;
            for (const auto& p : selected_processes(th, sem, opt)) {
                std::vector<std::string> names;
                for (auto i : p) names.push_back(th[i].name);
                got.push_back(names);
            }
            o.passed = got == check.at("expect").get<std::vector<std::vector<std::string>>>();
            if (!o.passed) o.detail = "got " + json(got).dump();
        } else if (kind == "entails") {
            const bool got = dl_entails(th, sem, parse_formula(check.at("formula").get<std::string>(), generated()), opt);
            o.passed = got == check.at("expect").get<bool>();
        } else if (kind == "equiv") {
            const DefaultTheory left = adjust(t, check, "left_background", "left_defaults");
            o.passed = dl_equivalent(left, th, sem, eq, opt) == check.at("expect").get<bool>();
        } else if (kind == "redundant-clause") {
            auto v = redundant_clause_dl(th, parse_clause(check.at("clause").get<std::string>(), generated()), sem, eq, opt);
            o.passed = v.redundant == check.at("expect").get<bool>();
        } else if (kind == "redundant-formula") {
            auto v = redundant_formula_dl(th, sem, eq, opt);
            o.passed = v.redundant == check.at("expect").get<bool>();
            if (o.passed && check.contains("witness")) {
                o.passed = th.background().subset(index_mask(*v.witness_subset)) == clause_list(check["witness"]);
                if (!o.passed) o.detail = "different witness";
            }
        } else if (kind == "redundant-default") {
            auto v = redundant_default(th, check.at("default").get<std::string>(), sem, eq, opt);
            o.passed = v.redundant == check.at("expect").get<bool>();
        } else if (kind == "redundant-defaults") {
            auto v = redundant_default_set(th, sem, eq, opt);
            o.passed = v.redundant == check.at("expect").get<bool>();
            if (o.passed && check.contains("witness")) {
                std::vector<std::string> names;
                for (auto i : *v.witness_subset) names.push_back(th[i].name);
                o.passed = names == check["witness"].get<std::vector<std::string>>();
                if (!o.passed) o.detail = "got witness " + json(names).dump();
            }
        } else if (kind == "gen") {
            std::vector<std::string> names;
            for (auto i : gen_set(parse_formula(check.at("formula").get<std::string>(), generated()), th, opt))
                names.push_back(th[i].name);
            o.passed = names == check.at("expect").get<std::vector<std::string>>();
            if (!o.passed) o.detail = "got " + json(names).dump();
        } else {
            throw InputError("unknown check '" + kind + "'");
        }
        out.push_back(o);
        if (kind == "gen") break;
    }
    return out;
}

inline std::vector<CheckOutcome> run_cnf_check(const std::string& fixture, const CnfFile& f, const json& check,
                                               const Limits& lim) {
    std::vector<CheckOutcome> out;
    const std::string kind = check.at("check").get<std::string>();
    CnfFormula pi = f.formula;
    if (check.contains("remove"))
        for (const auto& c : check["remove"]) pi = pi.without(parse_clause(c.get<std::string>(), generated()));
    const Universe& u = f.universe;
    auto model_names = [&](Model m) { return true_vars(m, u); };
    if (kind == "circ-models") {
        std::vector<std::vector<std::string>> got;
        for (auto m : circ(pi, u, lim).models()) got.push_back(model_names(m));
        CheckOutcome o{fixture, kind, false, ""};
        o.passed = got == check.at("expect").get<std::vector<std::vector<std::string>>>();
        if (!o.passed) o.detail = "got " + json(got).dump();
        out.push_back(o);
    } else if (kind == "circ-entails") {
        CheckOutcome o{fixture, kind, false, ""};
        o.passed = circ_entails(pi, parse_formula(check.at("formula").get<std::string>(), generated()), u, lim) ==
                   check.at("expect").get<bool>();
        out.push_back(o);
    } else if (kind == "circ-redundant-clause") {
        const Clause g = parse_clause(check.at("clause").get<std::string>(), generated());
        for (const auto& s : string_list(check, "strategy", {"in-rest"})) {
            CheckOutcome o{fixture, kind + " [" + s + "]", false, ""};
            auto v = circ_redundant_clause(pi, g, u, parse_strategy(s), lim);
            o.passed = v.redundant == check.at("expect").get<bool>();
            if (o.passed && check.contains("witness_model")) {
                o.passed = v.witness_model && model_names(*v.witness_model) ==
                                                 check["witness_model"].get<std::vector<std::string>>();
                if (!o.passed) o.detail = "different witness model";
            }
            out.push_back(o);
        }
    } else if (kind == "classically-redundant-clause") {
        CheckOutcome o{fixture, kind, false, ""};
        o.passed = classically_redundant_clause(pi, parse_clause(check.at("clause").get<std::string>(), generated()), u,
                                                lim) == check.at("expect").get<bool>();
        out.push_back(o);
    } else {
        throw InputError("unknown check '" + kind + "'");
    }
    return out;
}

}  // namespace detail

inline bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Runs every fixture that has a matching sidecar. A fixture without a sidecar
// (or a sidecar without a fixture) is reported as a failed check.
inline std::vector<CheckOutcome> run_fixtures(const std::vector<FixtureSource>& files, const Limits& lim = {}) {
    std::vector<CheckOutcome> out;
    auto find = [&](const std::string& name) -> const FixtureSource* {
        for (const auto& f : files)
            if (f.name == name) return &f;
        return nullptr;
    };
    for (const auto& f : files) {
        const bool thy = ends_with(f.name, ".thy"), cnf = ends_with(f.name, ".cnf");
        if (!thy && !cnf) continue;
        const std::string stem = f.name.substr(0, f.name.size() - 4);
        const FixtureSource* expect = find(stem + ".expect.json");
        if (!expect) {
            out.push_back({f.name, "sidecar", false, "missing " + stem + ".expect.json"});
            continue;
        }
        try {
            const auto expectations = nlohmann::json::parse(expect->text);
            if (thy) {
                const DefaultTheory t = parse_theory(f.text);
                for (const auto& c : expectations.at("checks")) {
                    auto r = detail::run_theory_check(f.name, t, c, lim);
                    out.insert(out.end(), r.begin(), r.end());
                }
            } else {
                const CnfFile cf = parse_cnf(f.text);
                for (const auto& c : expectations.at("checks")) {
                    auto r = detail::run_cnf_check(f.name, cf, c, lim);
                    out.insert(out.end(), r.begin(), r.end());
                }
            }
        } catch (const std::exception& e) {
            out.push_back({f.name, "load", false, e.what()});
        }
    }
    for (const auto& f : files) {
        if (!ends_with(f.name, ".expect.json")) continue;
        const std::string stem = f.name.substr(0, f.name.size() - 12);
        if (!find(stem + ".thy") && !find(stem + ".cnf"))
            out.push_back({f.name, "sidecar", false, "no fixture file for this sidecar"});
    }
    return out;
}

}  // namespace nmr::cli
