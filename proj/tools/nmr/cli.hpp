#pragma once

// Command-line front end. run() is separate from main() so tests can drive
// the CLI in-process.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <functional>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "nmr/nmr.hpp"
#include "nmr_fixtures_embedded.hpp"
#include "fixture_runner.hpp"

namespace nmr::cli {

enum ExitCode : int { exit_ok = 0, exit_negative = 1, exit_input = 2, exit_cap = 3 };

using json = nlohmann::json;

struct Report {
    std::string command;
    json result;
    json witness;
    json evidence;
    std::optional<Semantics> semantics;
    std::optional<EquivKind> equivalence;
    std::string text;             // human-readable form
    std::optional<bool> verdict;  // yes/no answer, consulted by --strict
};

namespace detail {

inline std::string read_input(const std::string& path) {
    if (path == "-") return std::string(std::istreambuf_iterator<char>(std::cin), {});
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    return std::string(std::istreambuf_iterator<char>(in), {});
}

inline json model_json(Model m, const Universe& u) { return true_vars(m, u); }

inline json evidence_json(const DlEvidence& e, const Universe& u) {
    json j;
    j["kind"] = std::string(to_string(e.kind));
    j["side"] = e.side == 0 ? "first" : "second";
    j["description"] = e.description;
    if (e.extension) j["extension"] = to_string(*e.extension);
    if (e.model) j["model"] = model_json(*e.model, u);
    if (e.clause) j["clause"] = to_string(*e.clause);
    return j;
}

inline std::string evidence_text(const DlEvidence& e, const Universe& u) {
    std::string s = "evidence: " + e.description;
    if (e.extension) s += "\n  extension: " + to_string(*e.extension);
    if (e.model) s += "\n  model: " + to_string(*e.model, u);
    if (e.clause) s += "\n  clause: " + to_string(*e.clause);
    return s;
}

inline json process_json(const ProcessSeq& p, const DefaultTheory& t) {
    json j = json::array();
    for (auto i : p) j.push_back(t[i].name);
    return j;
}

inline std::vector<std::size_t> parse_index_list(const std::vector<std::string>& names,
                                                 const std::function<std::size_t(const std::string&)>& lookup) {
    std::vector<std::size_t> out;
    for (const auto& n : names) out.push_back(lookup(n));
    return out;
}

}  // namespace detail

inline int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Redundancy checks for circumscription and default logic", "nmr"};
    app.require_subcommand(1);
    app.fallthrough();

    bool as_json = false, strict = false, quiet = false, allow_reserved = false, timing = false;
    bool rational_literal = false;
    std::string sem_name = "reiter", eq_name = "faithful";
    std::optional<std::size_t> max_vars, max_defaults;
    app.add_flag("--json", as_json, "Print a JSON report");
    app.add_flag("--strict", strict, "Exit with 1 when the answer is no or irredundant");
    app.add_flag("--quiet", quiet, "Print nothing for yes/no commands");
    app.add_flag("--allow-reserved", allow_reserved, "Accept generated names containing '__' in input files");
    app.add_flag("--timing", timing, "Add elapsed time to the report (breaks byte-stable output)");
    app.add_flag("--rational-without-joint-success", rational_literal,
                 "Rational semantics: drop the joint-justification success condition");
    app.add_option("--semantics", sem_name, "reiter, justified, constrained or rational");
    app.add_option("--equivalence", eq_name, "mutual, consequence or faithful");
    app.add_option("--max-vars", max_vars, "Largest universe to enumerate (env NMR_MAX_VARS)");
    app.add_option("--max-defaults", max_defaults, "Largest default set to search (env NMR_MAX_DEFAULTS)");

    auto group = [&](const char* name, const char* desc) {
        auto* g = app.add_subcommand(name, desc);
        g->require_subcommand(1);
        g->fallthrough();
        return g;
    };
    auto command = [](CLI::App* g, const char* name, const char* desc) {
        auto* c = g->add_subcommand(name, desc);
        c->fallthrough();
        return c;
    };

    std::string file, file2, clause_text, formula_text, default_name, strategy = "in-rest", fdefault, fixture_dir;
    std::vector<std::string> clause_list, default_list, var_list;
    bool protect_all = false, raise = false;

    auto* circ_g = group("circ", "Circumscription");
    auto* circ_models = command(circ_g, "models", "List the minimal models");
    auto* circ_entails_c = command(circ_g, "entails", "Check whether every minimal model satisfies a formula");
    auto* circ_rclause = command(circ_g, "redundant-clause", "Check CIRC-redundancy of one clause");
    auto* circ_rformula = command(circ_g, "redundant", "Check CIRC-redundancy of the formula");
    auto* circ_protect = command(circ_g, "make-irredundant", "Build I(P, P') protecting the given clauses");
    auto* circ_lift = command(circ_g, "lift", "Add x | x__p for every negative literal of a clause");
    for (auto* c : {circ_models, circ_entails_c, circ_rclause, circ_rformula, circ_protect, circ_lift})
        c->add_option("file", file, "CNF file")->required();
    circ_entails_c->add_option("--formula", formula_text)->required();
    circ_rclause->add_option("--clause", clause_text)->required();
    circ_rclause->add_option("--strategy", strategy, "definitional, in-pi, in-rest or positive");
    circ_protect->add_option("--clause", clause_list, "Clause to protect (repeatable)");
    circ_protect->add_flag("--all", protect_all, "Protect every clause");
    circ_lift->add_option("--clause", clause_text)->required();

    auto* dl_g = group("dl", "Default logic");
    auto* dl_ext = command(dl_g, "extensions", "List the extensions");
    auto* dl_proc = command(dl_g, "processes", "List the selected processes");
    auto* dl_ent = command(dl_g, "entails", "Skeptical consequence");
    auto* dl_equiv = command(dl_g, "equiv", "Compare two theories");
    auto* dl_rclause = command(dl_g, "redundant-clause", "Redundancy of one background clause");
    auto* dl_rformula = command(dl_g, "redundant-formula", "Redundancy of the background");
    auto* dl_rdefault = command(dl_g, "redundant-default", "Redundancy of one default");
    auto* dl_rdefaults = command(dl_g, "redundant-defaults", "Redundancy of the default set");
    for (auto* c : {dl_ext, dl_proc, dl_ent, dl_equiv, dl_rclause, dl_rformula, dl_rdefault, dl_rdefaults})
        c->add_option("file", file, "Theory file")->required();
    dl_equiv->add_option("other", file2, "Second theory file")->required();
    dl_ent->add_option("--formula", formula_text)->required();
    dl_rclause->add_option("--clause", clause_text)->required();
    dl_rdefault->add_option("--default", default_name)->required();

    auto* tr_g = group("transform", "Theory transformations");
    auto* tr_c2d = command(tr_g, "clause-to-default", "Turn background clauses into categorical defaults");
    auto* tr_pc = command(tr_g, "protect-clauses", "Make background clauses irredundant");
    auto* tr_pd = command(tr_g, "protect-defaults", "Make defaults irredundant");
    auto* tr_raise = command(tr_g, "raise", "Apply the two-in-one construction per variable");
    for (auto* c : {tr_c2d, tr_pc, tr_pd, tr_raise}) c->add_option("file", file, "Theory file")->required();
    tr_c2d->add_option("--clause", clause_text, "Only move this clause");
    tr_pc->add_option("--clause", clause_list, "Clause to protect (repeatable; default all)");
    tr_pd->add_option("--default", default_list, "Default to protect (repeatable; default all)");
    tr_raise->add_option("--f-default", fdefault, "Default whose justification holds the matrix")->required();
    tr_raise->add_option("--var", var_list, "Existential variable (repeatable)")->required();

    auto* red_g = group("reduce", "Reductions from QBF");
    auto* red_circ2 = command(red_g, "circ2", "forall-exists QBF to CIRC clause redundancy");
    auto* red_dl2 = command(red_g, "dl2", "forall-exists QBF to default clause redundancy");
    auto* red_dl3c = command(red_g, "dl3-cons", "exists-forall-exists QBF to consequence equivalence");
    auto* red_dl3f = command(red_g, "dl3-formula", "exists-forall-exists QBF to background redundancy");
    for (auto* c : {red_circ2, red_dl2, red_dl3c, red_dl3f}) c->add_option("file", file, "QBF file")->required();
    red_dl2->add_flag("--raise", raise, "Accept a leading exists block and raise over it");

    auto* qbf_g = group("qbf", "QBF utilities");
    auto* qbf_eval = command(qbf_g, "eval", "Evaluate by full expansion");
    qbf_eval->add_option("file", file, "QBF file")->required();

    auto* fx_g = group("fixtures", "Built-in fixture corpus");
    auto* fx_run = command(fx_g, "run", "Check every fixture against its expectations");
    fx_run->add_option("--dir", fixture_dir, "Read fixtures from a directory instead");

    try {
        std::vector<std::string> rev(argv.rbegin(), argv.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    }

    const auto started = std::chrono::steady_clock::now();
    Report rep;
    Limits lim;
    try {
        if (const char* v = std::getenv("NMR_MAX_VARS")) lim.max_vars = std::stoul(v);
        if (const char* v = std::getenv("NMR_MAX_DEFAULTS")) lim.max_defaults = std::stoul(v);
        if (max_vars) lim.max_vars = *max_vars;
        if (max_defaults) lim.max_defaults = *max_defaults;
        const ParseOptions popt{allow_reserved};
        const Semantics sem = parse_semantics(sem_name);
        const EquivKind eq = parse_equiv_kind(eq_name);
        const EngineOptions eopt{lim, !rational_literal};

        auto load_cnf = [&] { return parse_cnf(detail::read_input(file), popt); };
        auto load_theory = [&](const std::string& p) { return parse_theory(detail::read_input(p), popt); };
        auto verdict = [&](bool redundant) {
            rep.verdict = redundant;
            rep.result = redundant;
            rep.text = redundant ? "redundant" : "irredundant";
        };
        auto yes_no = [&](bool v) {
            rep.verdict = v;
            rep.result = v;
            rep.text = v ? "yes" : "no";
        };
        auto dl_witness = [&](const DefaultTheory& t, const DlVerdict& v, bool defaults) {
            if (v.counter_evidence) {
                rep.evidence = detail::evidence_json(*v.counter_evidence, t.universe());
                rep.text += "\n" + detail::evidence_text(*v.counter_evidence, t.universe());
            }
            if (!v.witness_subset) return;
            json w = json::array();
            std::string s;
            for (auto i : *v.witness_subset) {
                const std::string item = defaults ? t[i].name : to_string(t.background()[i]);
                w.push_back(item);
                s += (s.empty() ? "" : "; ") + item;
            }
            rep.witness = w;
            rep.text += "\nwitness: {" + s + "}";
        };
        auto set_dl = [&] {
            rep.semantics = sem;
            rep.equivalence = eq;
        };

        if (circ_models->parsed()) {
            rep.command = "circ models";
            auto cf = load_cnf();
            rep.result = json::array();
            for (auto m : circ(cf.formula, cf.universe, lim).models()) {
                rep.result.push_back(detail::model_json(m, cf.universe));
                rep.text += to_string(m, cf.universe) + "\n";
            }
            if (rep.text.empty()) rep.text = "(no minimal models)\n";
            rep.text.pop_back();
        } else if (circ_entails_c->parsed()) {
            rep.command = "circ entails";
            auto cf = load_cnf();
            Formula f = parse_formula(formula_text, popt);
            cf.universe.require_covers(f);
            yes_no(circ_entails(cf.formula, f, cf.universe, lim));
        } else if (circ_rclause->parsed()) {
            rep.command = "circ redundant-clause";
            auto cf = load_cnf();
            Clause g = parse_clause(clause_text, popt);
            auto v = circ_redundant_clause(cf.formula, g, cf.universe, detail::parse_strategy(strategy), lim);
            verdict(v.redundant);
            if (v.witness_model) {
                rep.witness = detail::model_json(*v.witness_model, cf.universe);
                rep.text += "\nwitness model: " + to_string(*v.witness_model, cf.universe);
            } else if (v.witness_clause) {
                rep.witness = to_string(*v.witness_clause);
            }
        } else if (circ_rformula->parsed()) {
            rep.command = "circ redundant";
            auto cf = load_cnf();
            auto v = circ_redundant_formula(cf.formula, cf.universe, lim);
            verdict(v.redundant);
            if (v.witness_clause) {
                rep.witness = to_string(*v.witness_clause);
                rep.text += "\nredundant clause: " + to_string(*v.witness_clause);
            }
        } else if (circ_protect->parsed()) {
            rep.command = "circ make-irredundant";
            auto cf = load_cnf();
            CnfFormula prot;
            if (protect_all) prot = cf.formula;
            for (const auto& c : clause_list) prot.add(parse_clause(c, popt));
            auto r = make_irredundant_circ(cf.formula, prot, cf.universe, lim);
            rep.text = print_cnf(r.formula, r.universe);
            rep.result = rep.text;
        } else if (circ_lift->parsed()) {
            rep.command = "circ lift";
            auto cf = load_cnf();
            auto r = lift_negative_clause(cf.formula, parse_clause(clause_text, popt), cf.universe);
            rep.text = print_cnf(r.formula, r.universe);
            rep.result = rep.text;
        } else if (dl_ext->parsed()) {
            rep.command = "dl extensions";
            rep.semantics = sem;
            auto t = load_theory(file);
            rep.result = json::array();
            for (const auto& e : extensions(t, sem, eopt)) {
                json procs = json::array();
                std::string ps;
                for (const auto& p : e.generating_processes) {
                    procs.push_back(detail::process_json(p, t));
                    ps += " " + to_string(p, t);
                }
                rep.result.push_back({{"formula", to_string(e.formula)}, {"processes", procs}});
                rep.text += to_string(e.formula) + "   from" + ps + "\n";
            }
            if (rep.text.empty()) rep.text = "(no extensions)\n";
            rep.text.pop_back();
        } else if (dl_proc->parsed()) {
            rep.command = "dl processes";
            rep.semantics = sem;
            auto t = load_theory(file);
            rep.result = json::array();
            for (const auto& p : selected_processes(t, sem, eopt)) {
                rep.result.push_back(detail::process_json(p, t));
                rep.text += to_string(p, t) + "\n";
            }
            if (rep.text.empty()) rep.text = "(no selected processes)\n";
            rep.text.pop_back();
        } else if (dl_ent->parsed()) {
            rep.command = "dl entails";
            rep.semantics = sem;
            auto t = load_theory(file);
            Formula f = parse_formula(formula_text, popt);
            t.universe().require_covers(f);
            yes_no(dl_entails(t, sem, f, eopt));
        } else if (dl_equiv->parsed()) {
            rep.command = "dl equiv";
            set_dl();
            auto t1 = load_theory(file), t2 = load_theory(file2);
            auto c = compare_theories(t1, t2, sem, eq, eopt);
            yes_no(c.equivalent);
            rep.text = c.equivalent ? "equivalent" : "not equivalent";
            if (c.evidence) {
                Universe u = t1.universe().extended(t2.universe().names());
                rep.evidence = detail::evidence_json(*c.evidence, u);
                rep.text += "\n" + detail::evidence_text(*c.evidence, u);
            }
        } else if (dl_rclause->parsed()) {
            rep.command = "dl redundant-clause";
            set_dl();
            auto t = load_theory(file);
            auto v = redundant_clause_dl(t, parse_clause(clause_text, popt), sem, eq, eopt);
            verdict(v.redundant);
            dl_witness(t, v, false);
        } else if (dl_rformula->parsed()) {
            rep.command = "dl redundant-formula";
            set_dl();
            auto t = load_theory(file);
            auto v = redundant_formula_dl(t, sem, eq, eopt);
            verdict(v.redundant);
            dl_witness(t, v, false);
        } else if (dl_rdefault->parsed()) {
            rep.command = "dl redundant-default";
            set_dl();
            auto t = load_theory(file);
            auto v = redundant_default(t, default_name, sem, eq, eopt);
            verdict(v.redundant);
            dl_witness(t, v, true);
        } else if (dl_rdefaults->parsed()) {
            rep.command = "dl redundant-defaults";
            set_dl();
            auto t = load_theory(file);
            auto v = redundant_default_set(t, sem, eq, eopt);
            verdict(v.redundant);
            dl_witness(t, v, true);
        } else if (tr_c2d->parsed()) {
            rep.command = "transform clause-to-default";
            auto t = load_theory(file);
            auto r = clause_text.empty() ? embed_clauses_as_defaults(t)
                                         : move_clause_to_default(t, parse_clause(clause_text, popt));
            rep.text = print_theory(r);
            rep.result = rep.text;
        } else if (tr_pc->parsed()) {
            rep.command = "transform protect-clauses";
            auto t = load_theory(file);
            std::vector<std::size_t> idx;
            if (clause_list.empty())
                for (std::size_t i = 0; i < t.background().size(); ++i) idx.push_back(i);
            for (const auto& c : clause_list) {
                auto i = t.background().index_of(parse_clause(c, popt));
                if (!i) throw InputError("clause '" + c + "' is not part of the background");
                idx.push_back(*i);
            }
            rep.text = print_theory(make_clauses_irredundant(t, idx, lim));
            rep.result = rep.text;
        } else if (tr_pd->parsed()) {
            rep.command = "transform protect-defaults";
            auto t = load_theory(file);
            std::vector<std::size_t> idx;
            if (default_list.empty())
                for (std::size_t i = 0; i < t.size(); ++i) idx.push_back(i);
            for (const auto& n : default_list) idx.push_back(t.index_of(n));
            rep.text = print_theory(make_defaults_irredundant(t, idx));
            rep.result = rep.text;
        } else if (tr_raise->parsed()) {
            rep.command = "transform raise";
            auto t = load_theory(file);
            auto h = raise_existential(ReductionHost{t, t.index_of(fdefault)}, var_list, lim);
            rep.text = print_theory(h.theory);
            rep.result = rep.text;
        } else if (red_circ2->parsed()) {
            rep.command = "reduce circ2";
            auto r = reduce_qbf2_to_circ_clause(parse_qbf(detail::read_input(file), popt));
            rep.text = "# the QBF is valid iff this clause is CIRC-redundant:\n# " + to_string(r.gamma) + "\n" +
                       print_cnf(r.pi, r.universe);
            rep.result = {{"formula", print_cnf(r.pi, r.universe)}, {"clause", to_string(r.gamma)}};
        } else if (red_dl2->parsed()) {
            rep.command = "reduce dl2";
            Qbf q = parse_qbf(detail::read_input(file), popt);
            if (raise) {
                auto h = reduce_qbf3_raised_dl(q, lim);
                rep.text = "# the QBF is valid iff the background is redundant (reiter, faithful)\n" +
                           print_theory(h.theory);
                rep.result = {{"theory", print_theory(h.theory)}, {"matrix_default", h.theory[h.f_default].name}};
            } else {
                q.validate(true);
                auto r = reduce_qbf2_to_dl_clause(q);
                rep.text = "# the QBF is valid iff this background clause is redundant (reiter, faithful):\n# " +
                           to_string(r.gamma) + "\n" + print_theory(r.host.theory);
                rep.result = {{"theory", print_theory(r.host.theory)}, {"clause", to_string(r.gamma)}};
            }
        } else if (red_dl3c->parsed()) {
            rep.command = "reduce dl3-cons";
            auto r = reduce_qbf3_to_dl_cons(parse_qbf(detail::read_input(file), popt));
            rep.text = "# the QBF is valid iff this theory and the same theory with an empty background\n"
                       "# are not consequence-equivalent (reiter)\n" +
                       print_theory(r.with_a);
            rep.result = {{"theory", print_theory(r.with_a)}, {"reduced_theory", print_theory(r.without_a)}};
        } else if (red_dl3f->parsed()) {
            rep.command = "reduce dl3-formula";
            auto t = reduce_qbf3_to_dl_formula(parse_qbf(detail::read_input(file), popt));
            rep.text = "# the QBF is valid iff the background is redundant (reiter, faithful)\n" + print_theory(t);
            rep.result = {{"theory", print_theory(t)}};
        } else if (qbf_eval->parsed()) {
            rep.command = "qbf eval";
            const bool v = eval_qbf(parse_qbf(detail::read_input(file), popt), lim);
            rep.verdict = v;
            rep.result = v;
            rep.text = v ? "valid" : "invalid";
        } else if (fx_run->parsed()) {
            rep.command = "fixtures run";
            std::vector<FixtureSource> files;
            if (fixture_dir.empty()) {
                for (const auto& f : embedded_fixtures()) files.push_back({std::string(f.name), std::string(f.text)});
            } else {
                std::vector<std::string> names;
                for (const auto& e : std::filesystem::directory_iterator(fixture_dir))
                    if (e.is_regular_file()) names.push_back(e.path().filename().string());
                std::sort(names.begin(), names.end());
                for (const auto& n : names) files.push_back({n, detail::read_input(fixture_dir + "/" + n)});
            }
            auto outcomes = run_fixtures(files, lim);
            bool all = true;
            rep.result = json::array();
            for (const auto& o : outcomes) {
                all = all && o.passed;
                rep.result.push_back({{"fixture", o.fixture}, {"check", o.label}, {"passed", o.passed}});
                rep.text += std::string(o.passed ? "PASS " : "FAIL ") + o.fixture + ": " + o.label +
                            (o.detail.empty() ? "" : " (" + o.detail + ")") + "\n";
            }
            rep.text += std::to_string(outcomes.size()) + " checks, " + (all ? "all passed" : "some failed");
            rep.verdict = all;
            strict = true;  // a failing corpus always exits non-zero
        }
    } catch (const CapExceeded& e) {
        err << "error: " << e.what() << '\n';
        return exit_cap;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::invalid_argument& e) {
        err << "error: bad numeric value in environment\n";
        return exit_input;
    }

    const bool file_output = !rep.verdict.has_value() && rep.command.rfind("circ models", 0) != 0 &&
                             rep.command.rfind("dl ", 0) != 0;
    if (as_json) {
        json j;
        j["command"] = rep.command;
        j["result"] = rep.result;
        j["witness"] = rep.witness;
        j["evidence"] = rep.evidence;
        j["semantics"] = rep.semantics ? json(std::string(to_string(*rep.semantics))) : json();
        j["equivalence"] = rep.equivalence ? json(std::string(to_string(*rep.equivalence))) : json();
        j["caps"] = {{"max_vars", lim.max_vars}, {"max_defaults", lim.max_defaults}};
        if (timing)
            j["timing_ms"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
        out << j.dump(2) << '\n';
    } else if (!quiet || file_output) {
        out << rep.text;
        if (rep.text.empty() || rep.text.back() != '\n') out << '\n';
        if (timing)
            out << "# "
                << std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count()
                << " ms\n";
    }
    if (strict && rep.verdict && !*rep.verdict) return exit_negative;
    return exit_ok;
}

}  // namespace nmr::cli
