#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "nmr/nmr.hpp"
#include "oracle.hpp"

using namespace nmr;

namespace {

Formula fm(const char* s) { return parse_formula(s, ParseOptions{true}); }
Clause cl(const char* s) { return parse_clause(s, ParseOptions{true}); }

std::set<std::vector<std::uint32_t>> ext_key(const std::vector<Extension>& exts) {
    std::set<std::vector<std::uint32_t>> out;
    for (const auto& e : exts) {
        std::vector<std::uint32_t> k;
        for (auto m : e.models.models()) k.push_back(m.bits);
        out.insert(k);
    }
    return out;
}

std::set<std::vector<std::uint32_t>> formula_key(const std::vector<Formula>& fs, const Universe& u) {
    std::set<std::vector<std::uint32_t>> out;
    for (const auto& f : fs) {
        std::vector<std::uint32_t> k;
        for (auto m : models(f, u).models()) k.push_back(m.bits);
        out.insert(k);
    }
    return out;
}

std::vector<std::size_t> indices(std::uint64_t mask, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1U) out.push_back(i);
    return out;
}

// Random theories that have at least one extension under sem.
DefaultTheory theory_with_extensions(gen::Rng& r, const gen::TheoryShape& shape, Semantics sem) {
    while (true) {
        DefaultTheory t = gen::theory(r, shape);
        if (!extensions(t, sem).empty()) return t;
    }
}

}  // namespace

TEST(ClauseToDefault, Construction) {
    Default d = clause_to_default(cl("a"), "da");
    EXPECT_EQ(d.name, "da");
    EXPECT_TRUE(d.prec.is_true());
    EXPECT_TRUE(d.just.is_true());
    EXPECT_EQ(d.cons, fm("a"));
    EXPECT_TRUE(clause_to_default(Clause{}, "e").cons.is_false());
}

TEST(ClauseToDefault, EmbeddingExamples) {
    DefaultTheory t({}, CnfFormula{cl("a")}, Universe{"a"});
    DefaultTheory e = embed_clauses_as_defaults(t);
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(e.background().size(), 0u);
    EXPECT_EQ(e[0].cons, fm("a"));
    auto exts = extensions(e, Semantics::reiter);
    ASSERT_EQ(exts.size(), 1u);
    EXPECT_TRUE(equivalent(exts[0].formula, fm("a"), e.universe()));

    DefaultTheory cvt = fixtures::theory("clause_vs_theory");
    DefaultTheory ce = embed_clauses_as_defaults(cvt);
    EXPECT_EQ(ext_key(extensions(ce, Semantics::reiter)), ext_key(extensions(cvt, Semantics::reiter)));
    EXPECT_EQ(embed_clauses_as_defaults(ce), ce);
}

// Reiter and rational extensions survive moving clauses into defaults.
TEST(ClauseToDefault, ConservesReiterAndRationalExtensions) {
    gen::Rng r(113);
    std::vector<DefaultTheory> ts;
    for (const auto& n : fixtures::theory_names()) ts.push_back(fixtures::theory(n));
    for (int i = 0; i < 200; ++i) ts.push_back(gen::theory(r, {}));
    for (const auto& t : ts) {
        for (auto sem : {Semantics::reiter, Semantics::rational}) {
            const auto want = oracle::extensions(t, sem);
            EXPECT_EQ(oracle::engine_extensions(extensions(embed_clauses_as_defaults(t), sem), t.universe()), want)
                << print_theory(t);
            for (const auto& g : t.background())
                EXPECT_EQ(oracle::engine_extensions(extensions(move_clause_to_default(t, g), sem), t.universe()), want);
        }
    }
}

// Not claimed for justified and constrained semantics: (:⊤/a) next to
// (:~a/b) gives a second justified extension that W = {a} rules out.
TEST(ClauseToDefault, JustifiedCanDiffer) {
    DefaultTheory t({Default{"d", Formula::top(), fm("~a"), fm("b")}}, CnfFormula{cl("a")});
    DefaultTheory moved = embed_clauses_as_defaults(t);
    EXPECT_EQ(ext_key(extensions(moved, Semantics::reiter)), ext_key(extensions(t, Semantics::reiter)));
    EXPECT_NE(ext_key(extensions(moved, Semantics::justified)), ext_key(extensions(t, Semantics::justified)));
}

TEST(MakeClausesIrredundant, Construction) {
    DefaultTheory t = fixtures::theory("clause_vs_theory");
    DefaultTheory none = make_clauses_irredundant(t, {});
    EXPECT_EQ(none.size(), t.size() + 1);
    EXPECT_EQ(none.background(), (CnfFormula{cl("__g_c1 | a"), cl("__g_c2 | b")}));
    EXPECT_EQ(none[0].just, fm("~__g_c1 & ~__g_c2"));
    EXPECT_EQ(none[1].prec, fm("~__g_c1 & ~__g_c2 & a"));

    DefaultTheory one = make_clauses_irredundant(t, {0});
    EXPECT_EQ(one.size(), t.size() + 2);
    EXPECT_EQ(one[1].prec, fm("__g_c1 | a"));
    EXPECT_EQ(one[1].just, fm("__g_c1 & ~__g_c2"));
    EXPECT_EQ(one[1].cons, fm("__g_c1 & ~__g_c2"));
    EXPECT_THROW(make_clauses_irredundant(t, {2}), InputError);
    EXPECT_THROW(make_clauses_irredundant(t.with_background(CnfFormula{cl("a"), cl("~a")}), {}), InputError);
}

TEST(MakeClausesIrredundant, FullProtectionMakesClauseVsTheoryIrredundant) {
    DefaultTheory t = fixtures::theory("clause_vs_theory");
    EXPECT_TRUE(redundant_formula_dl(t, Semantics::reiter, EquivKind::faithful).redundant);
    DefaultTheory p = make_clauses_irredundant(t, {0, 1});
    EXPECT_FALSE(redundant_formula_dl(p, Semantics::reiter, EquivKind::faithful).redundant);
}

// Equivalent proper subsets of the new background keep every protected
// clause and project onto a subset equivalent to W. The converse needs one
// more condition: the extension opened by the default for a protected γ_i is
// the conjunction of the other γ_j, so the subset must keep that conjunction
// classically intact.
TEST(MakeClausesIrredundant, SubsetPattern) {
    gen::Rng r(127);
    gen::TheoryShape shape;
    shape.vars = 2;
    shape.max_clauses = 3;
    int done = 0, extra_condition_mattered = 0;
    while (done < 40) {
        DefaultTheory t = theory_with_extensions(r, shape, Semantics::reiter);
        const std::size_t m = t.background().size();
        if (m == 0) continue;
        ++done;
        const std::uint64_t protect = static_cast<std::uint64_t>(r.uniform(0, (1 << m) - 1));
        DefaultTheory out = make_clauses_irredundant(t, indices(protect, m));
        const std::uint64_t all = (std::uint64_t{1} << m) - 1;
        for (auto kind : {EquivKind::faithful, EquivKind::consequence}) {
            for (std::uint64_t s = 0; s < all; ++s) {
                const bool got = dl_equivalent(out.with_background(out.background().subset(s)), out, Semantics::reiter, kind);
                const bool stated = (s & protect) == protect &&
                                    dl_equivalent(t.with_background(t.background().subset(s)), t, Semantics::reiter, kind);
                bool branches = true;
                for (auto i : indices(protect, m)) {
                    const std::uint64_t others = all & ~(std::uint64_t{1} << i);
                    branches = branches && equivalent(t.background().subset(s & others), t.background().subset(others),
                                                      t.universe());
                }
                if (got) {
                    EXPECT_TRUE(stated) << print_theory(t) << "protect " << protect << " subset " << s;
                }
                EXPECT_EQ(got, stated && branches) << print_theory(t) << "protect " << protect << " subset " << s;
                if (stated && !branches) ++extra_condition_mattered;
            }
        }
    }
    EXPECT_GT(extra_condition_mattered, 0);
}

TEST(MakeDefaultsIrredundant, TrivialDefault) {
    DefaultTheory t({Default{"d", Formula::top(), Formula::top(), fm("a")}}, CnfFormula{}, Universe{"a"});
    DefaultTheory out = make_defaults_irredundant(t, {0});
    EXPECT_EQ(out.size(), 3u);
    EXPECT_EQ(out[2].prec, fm("__g_q"));
    EXPECT_EQ(out[2].cons, fm("(__g_p | __g_v1) & (~__g_p | a)"));
    auto exts = extensions(out, Semantics::reiter);
    EXPECT_EQ(exts.size(), 2u);
    EXPECT_THROW(make_defaults_irredundant(t, {1}), InputError);
}

// Extensions of the output: those of the input under p ∧ q, plus
// W ∧ ¬p ∧ q ∧ v_1 ∧ ... ∧ v_k.
TEST(MakeDefaultsIrredundant, ExtensionsFollowTheInput) {
    gen::Rng r(131);
    std::vector<DefaultTheory> ts;
    for (const auto& n : fixtures::theory_names()) {
        DefaultTheory t = fixtures::theory(n);
        if (t.size() <= 4 && !extensions(t, Semantics::reiter).empty()) ts.push_back(t);
    }
    for (int i = 0; i < 60; ++i) ts.push_back(theory_with_extensions(r, {}, Semantics::reiter));
    for (const auto& t : ts) {
        const std::uint64_t mask = static_cast<std::uint64_t>(r.uniform(0, (1 << t.size()) - 1));
        const auto protect = indices(mask, t.size());
        DefaultTheory out = make_defaults_irredundant(t, protect);
        const Formula p = var("__g_p"), q = var("__g_q");
        std::vector<Formula> want;
        for (const auto& e : extensions(t, Semantics::reiter)) want.push_back(e.formula & p & q);
        std::vector<Formula> off{cnf_formula(t.background()), ~p, q};
        for (std::size_t i = 1; i <= protect.size(); ++i) off.push_back(var("__g_v" + std::to_string(i)));
        want.push_back(Formula::conjunction(off));
        EXPECT_EQ(ext_key(extensions(out, Semantics::reiter)), formula_key(want, out.universe())) << print_theory(t);
    }
}

// An equivalent subset of the output keeps both selectors and every
// protected default.
TEST(MakeDefaultsIrredundant, EquivalentSubsetsKeepTheProtectedPart) {
    gen::Rng r(137);
    for (int i = 0; i < 40; ++i) {
        DefaultTheory t = theory_with_extensions(r, {}, Semantics::reiter);
        const std::uint64_t mask = static_cast<std::uint64_t>(r.uniform(0, (1 << t.size()) - 1));
        DefaultTheory out = make_defaults_irredundant(t, indices(mask, t.size()));
        const std::uint64_t must = 0b11 | (mask << 2);
        for (std::uint64_t s = 0; s + 1 < (std::uint64_t{1} << out.size()); ++s) {
            if (!dl_equivalent(out.restrict_defaults(s), out, Semantics::reiter, EquivKind::faithful)) continue;
            EXPECT_EQ(s & must, must) << print_theory(t) << "subset " << s;
            // the rest mirrors the input
            EXPECT_TRUE(dl_equivalent(t.restrict_defaults(s >> 2), t, Semantics::reiter, EquivKind::faithful));
        }
    }
}

TEST(MakeDefaultsIrredundant, ReiterNonLocalFixture) {
    DefaultTheory t = fixtures::theory("reiter_rational_nonlocal_defaults");
    DefaultTheory out = make_defaults_irredundant(t, {0, 1});
    for (const char* d : {"d1", "d2"})
        EXPECT_FALSE(redundant_default(out, d, Semantics::reiter, EquivKind::faithful).redundant) << d;
}

TEST(MoveJustLiteral, Construction) {
    DefaultTheory t({Default{"d", fm("a"), fm("b & w"), fm("c")}}, CnfFormula{cl("a")}, Universe{"a", "b", "c", "w"});
    DefaultTheory moved = move_just_literal(t, 0, Literal{"w", true}, LiteralMove::to_background);
    EXPECT_EQ(moved[0].just, fm("b"));
    EXPECT_EQ(moved.background(), (CnfFormula{cl("a"), cl("w")}));
    EXPECT_EQ(move_just_literal(moved, 0, Literal{"w", true}, LiteralMove::to_justification), t);
    EXPECT_THROW(move_just_literal(t, 0, Literal{"a", true}, LiteralMove::to_background), InputError);
    EXPECT_THROW(move_just_literal(t, 0, Literal{"w", false}, LiteralMove::to_background), InputError);
    EXPECT_THROW(move_just_literal(t, 0, Literal{"w", true}, LiteralMove::to_justification), InputError);
    EXPECT_THROW(move_just_literal(t, 1, Literal{"w", true}, LiteralMove::to_background), InputError);
}

// Selected processes are the same index sequences before and after.
TEST(MoveJustLiteral, PreservesSelectedProcesses) {
    gen::Rng r(139);
    int checked = 0;
    for (int i = 0; i < 300; ++i) {
        DefaultTheory base = gen::theory(r, {});
        std::vector<std::string> names = gen::var_names(3);
        names.push_back("w");
        const std::size_t d = static_cast<std::size_t>(r.uniform(0, static_cast<int>(base.size()) - 1));
        std::vector<Default> ds = base.defaults();
        const Literal l{"w", r.coin()};
        ds[d].just = ds[d].just.is_true() ? literal_formula(l) : ds[d].just & literal_formula(l);
        DefaultTheory t(ds, base.background(), Universe(names));
        DefaultTheory moved = move_just_literal(t, d, l, LiteralMove::to_background);
        EXPECT_EQ(move_just_literal(moved, d, l, LiteralMove::to_justification), t);
        for (auto sem : all_semantics) {
            ++checked;
            EXPECT_EQ(selected_processes(moved, sem), selected_processes(t, sem)) << print_theory(t) << to_string(sem);
        }
    }
    EXPECT_GT(checked, 1000);
}

namespace {

ReductionHost small_host() {
    Qbf q = parse_qbf("forall x\nexists y\nmatrix: x | y");
    return reduce_qbf2_to_dl_clause(q).host;
}

}  // namespace

TEST(TwoInOne, Structure) {
    ReductionHost h = small_host();
    ReductionHost out = two_in_one(h, "w");
    EXPECT_EQ(out.theory.size(), h.theory.size() + 4);
    EXPECT_EQ(out.theory.background().size(), h.theory.background().size() + 2);
    EXPECT_TRUE(out.theory.background().contains(cl("w__pos")));
    EXPECT_TRUE(out.theory.background().contains(cl("w__neg")));
    EXPECT_EQ(out.theory[out.f_default].name, h.theory[h.f_default].name);
    EXPECT_EQ(out.theory[out.f_default].just, h.theory[h.f_default].just);
    EXPECT_FALSE(classically_redundant_formula(out.theory.background(), out.theory.universe()));
    // only the host default mentions the matrix variables in a justification
    for (std::size_t i = 0; i < out.theory.size(); ++i)
        if (i != out.f_default) {
            EXPECT_FALSE(mentions(out.theory[i].just, "y"));
        }
    EXPECT_THROW(two_in_one(h, "x"), InputError);
    EXPECT_THROW(two_in_one(ReductionHost{h.theory, 99}, "w"), InputError);
    DefaultTheory redundant_bg = h.theory.with_background(CnfFormula{cl("__g_a"), cl("__g_a | x")});
    EXPECT_THROW(two_in_one(ReductionHost{redundant_bg, h.f_default}, "w"), InputError);
}

// Dropping both w⁺ and w⁻ lets the (: ¬w⁺ ∧ ¬w⁻ / ¬p) default fire, which
// the full theory never allows.
TEST(TwoInOne, BareSubsetIsNotEquivalent) {
    ReductionHost out = two_in_one(small_host(), "w");
    const DefaultTheory& t = out.theory;
    CnfFormula bare = t.background().without(cl("w__pos")).without(cl("w__neg"));
    DefaultTheory sub = t.with_background(bare);
    EXPECT_FALSE(dl_equivalent(sub, t, Semantics::reiter, EquivKind::faithful));
    EXPECT_TRUE(dl_entails(t, Semantics::reiter, fm("__g_p")));
    EXPECT_FALSE(dl_entails(sub, Semantics::reiter, fm("__g_p")));
}

TEST(RaiseExistential, EmptyListIsIdentity) {
    ReductionHost h = small_host();
    ReductionHost out = raise_existential(h, {});
    EXPECT_EQ(out.theory, h.theory);
    EXPECT_EQ(out.f_default, h.f_default);
}

TEST(RaiseExistential, FoldsTwoInOne) {
    ReductionHost h = small_host();
    ReductionHost both = raise_existential(h, {"v", "w"});
    ReductionHost stepwise = raise_existential(raise_existential(h, {"v"}), {"w"});
    EXPECT_EQ(both.theory, stepwise.theory);
    EXPECT_EQ(both.f_default, stepwise.f_default);
    EXPECT_EQ(both.theory.size(), h.theory.size() + 8);
}
