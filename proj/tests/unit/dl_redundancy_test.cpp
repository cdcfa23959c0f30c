#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "generators.hpp"
#include "nmr/nmr.hpp"
#include "oracle.hpp"

using namespace nmr;

namespace {

Formula fm(const char* s) { return parse_formula(s); }
Clause cl(const char* s) { return parse_clause(s); }

std::vector<std::size_t> indices(std::uint64_t mask, std::size_t n) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1U) out.push_back(i);
    return out;
}

// First equivalent proper background subset by size then index order, by
// brute force over the oracle.
std::optional<std::vector<std::size_t>> oracle_formula_witness(const DefaultTheory& t, Semantics sem, EquivKind k) {
    const std::size_t m = t.background().size();
    std::vector<std::vector<std::size_t>> cands;
    for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << m); ++mask) cands.push_back(indices(mask, m));
    std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (const auto& c : cands)
        if (oracle::equivalent(t.with_background(t.background().subset(index_mask(c))), t, sem, k)) return c;
    return std::nullopt;
}

std::optional<std::vector<std::size_t>> oracle_default_witness(const DefaultTheory& t, Semantics sem, EquivKind k) {
    const std::size_t n = t.size();
    std::vector<std::vector<std::size_t>> cands;
    for (std::uint64_t mask = 0; mask + 1 < (std::uint64_t{1} << n); ++mask) cands.push_back(indices(mask, n));
    std::stable_sort(cands.begin(), cands.end(), [](const auto& a, const auto& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    for (const auto& c : cands)
        if (oracle::equivalent(t.restrict_defaults(index_mask(c)), t, sem, k)) return c;
    return std::nullopt;
}

}  // namespace

TEST(RedundantClause, ClauseVsTheoryFixture) {
    DefaultTheory t = fixtures::theory("clause_vs_theory");
    for (const char* c : {"a", "b"}) {
        DlVerdict v = redundant_clause_dl(t, cl(c), Semantics::reiter, EquivKind::faithful);
        EXPECT_FALSE(v.redundant) << c;
        ASSERT_TRUE(v.counter_evidence);
        EXPECT_EQ(v.counter_evidence->kind, EquivKind::faithful);
    }
    EXPECT_THROW(redundant_clause_dl(t, cl("~a"), Semantics::reiter, EquivKind::faithful), InputError);
}

TEST(RedundantClause, NoDefaultsIsClassicalRedundancy) {
    gen::Rng r(79);
    const auto vars = gen::var_names(3);
    Universe u(vars);
    for (int i = 0; i < 200; ++i) {
        CnfFormula w = gen::cnf(r, vars, 4);
        DefaultTheory t({}, w, u);
        for (const auto& g : w)
            for (auto sem : all_semantics)
                for (auto k : {EquivKind::consequence, EquivKind::faithful})
                    EXPECT_EQ(redundant_clause_dl(t, g, sem, k).redundant, classically_redundant_clause(w, g, u));
    }
}

TEST(RedundantClause, AgreesWithOracleAndKindsChain) {
    gen::Rng r(83);
    std::vector<DefaultTheory> ts;
    for (const auto& n : fixtures::theory_names()) ts.push_back(fixtures::theory(n));
    for (int i = 0; i < 120; ++i) ts.push_back(gen::theory(r, {}));
    for (const auto& t : ts) {
        for (const auto& g : t.background()) {
            DefaultTheory sub = t.with_background(t.background().without(g));
            for (auto sem : all_semantics) {
                bool verdict[3];
                for (auto k : all_equiv_kinds) {
                    DlVerdict v = redundant_clause_dl(t, g, sem, k);
                    verdict[static_cast<int>(k)] = v.redundant;
                    EXPECT_EQ(v.redundant, oracle::equivalent(sub, t, sem, k)) << print_theory(t) << to_string(g);
                    if (v.redundant) {
                        ASSERT_TRUE(v.witness_subset);
                        EXPECT_TRUE(dl_equivalent(
                            t.with_background(t.background().subset(index_mask(*v.witness_subset))), t, sem, k));
                    } else {
                        EXPECT_TRUE(v.counter_evidence);
                    }
                }
                // faithful ⇒ consequence ⇒ mutual
                EXPECT_LE(verdict[static_cast<int>(EquivKind::faithful)], verdict[static_cast<int>(EquivKind::consequence)]);
                EXPECT_LE(verdict[static_cast<int>(EquivKind::consequence)], verdict[static_cast<int>(EquivKind::mutual)]);
            }
        }
    }
}

TEST(RedundantFormula, Examples) {
    DefaultTheory t = fixtures::theory("clause_vs_theory");
    DlVerdict v = redundant_formula_dl(t, Semantics::reiter, EquivKind::faithful);
    EXPECT_TRUE(v.redundant);
    EXPECT_EQ(*v.witness_subset, std::vector<std::size_t>{});
    auto exts = extensions(t.with_background({}), Semantics::reiter);
    ASSERT_EQ(exts.size(), 1u);
    EXPECT_TRUE(equivalent(exts[0].formula, fm("a & b"), t.universe()));
    DefaultTheory none = fixtures::theory("mutual_not_consequence").with_background({});
    for (auto k : all_equiv_kinds) EXPECT_FALSE(redundant_formula_dl(none, Semantics::reiter, k).redundant);
}

TEST(RedundantFormula, WitnessMatchesOracleSearchOrder) {
    gen::Rng r(89);
    gen::TheoryShape shape;
    shape.max_clauses = 3;
    for (int i = 0; i < 120; ++i) {
        DefaultTheory t = gen::theory(r, shape);
        for (auto sem : all_semantics)
            for (auto k : all_equiv_kinds) {
                DlVerdict v = redundant_formula_dl(t, sem, k);
                auto want = oracle_formula_witness(t, sem, k);
                EXPECT_EQ(v.redundant, want.has_value()) << print_theory(t);
                if (want) {
                    EXPECT_EQ(*v.witness_subset, *want);
                }
            }
    }
}

TEST(RedundantFormula, NormalCategoricalIsLocal) {
    gen::Rng r(97);
    gen::TheoryShape shape;
    shape.normal = shape.categorical = true;
    shape.max_clauses = 3;
    for (int i = 0; i < 150; ++i) {
        DefaultTheory t = gen::theory(r, shape);
        for (auto sem : all_semantics) {
            bool some_clause = false;
            for (const auto& g : t.background())
                some_clause = some_clause || redundant_clause_dl(t, g, sem, EquivKind::faithful).redundant;
            EXPECT_EQ(redundant_formula_dl(t, sem, EquivKind::faithful).redundant, some_clause) << print_theory(t);
            EXPECT_EQ(redundant_formula_dl(t, sem, EquivKind::faithful).redundant,
                      redundant_formula_dl(t, sem, EquivKind::consequence).redundant)
                << print_theory(t);
        }
    }
}

TEST(RedundantDefault, ReiterNonLocalFixture) {
    DefaultTheory t = fixtures::theory("reiter_rational_nonlocal_defaults");
    for (auto sem : {Semantics::reiter, Semantics::rational}) {
        for (std::size_t d = 0; d < 3; ++d)
            for (auto k : {EquivKind::consequence, EquivKind::faithful})
                EXPECT_FALSE(redundant_default(t, d, sem, k).redundant) << d;
        DlVerdict v = redundant_default_set(t, sem, EquivKind::faithful);
        EXPECT_TRUE(v.redundant);
        EXPECT_EQ(*v.witness_subset, std::vector<std::size_t>{2});
    }
    DlVerdict d1 = redundant_default(t, 0, Semantics::reiter, EquivKind::consequence);
    ASSERT_TRUE(d1.counter_evidence && d1.counter_evidence->model);
    EXPECT_EQ(d1.counter_evidence->side, 0);
    EXPECT_THROW(redundant_default(t, 3, Semantics::reiter, EquivKind::faithful), InputError);
    EXPECT_THROW(redundant_default(t, "nope", Semantics::reiter, EquivKind::faithful), InputError);
}

TEST(RedundantDefault, ConstrainedNonLocalFixture) {
    DefaultTheory t = fixtures::theory("constrained_nonlocal_defaults");
    DlVerdict v = redundant_default_set(t, Semantics::constrained, EquivKind::faithful);
    EXPECT_TRUE(v.redundant);
    EXPECT_EQ(*v.witness_subset, std::vector<std::size_t>{2});
    for (std::size_t d : {0, 1})
        EXPECT_FALSE(redundant_default(t, d, Semantics::constrained, EquivKind::faithful).redundant);
}

TEST(RedundantDefault, TrivialDefault) {
    DefaultTheory t({Default{"d", Formula::top(), Formula::top(), fm("a")}}, CnfFormula{cl("a")});
    for (auto sem : all_semantics)
        for (auto k : all_equiv_kinds) EXPECT_TRUE(redundant_default(t, 0, sem, k).redundant);
    DefaultTheory empty({}, CnfFormula{cl("a")});
    EXPECT_FALSE(redundant_default_set(empty, Semantics::reiter, EquivKind::faithful).redundant);
}

// γ redundant in ⟨D, W ∪ {γ}⟩ iff its default is redundant in ⟨D ∪ {d_γ}, W⟩.
TEST(RedundantDefault, ClauseDefaultBridge) {
    gen::Rng r(101);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        DefaultTheory t = gen::theory(r, {});
        for (const auto& g : t.background()) {
            DefaultTheory moved = move_clause_to_default(t, g);
            for (auto sem : {Semantics::reiter, Semantics::rational}) {
                EXPECT_EQ(oracle::extensions(moved, sem), oracle::extensions(t, sem)) << print_theory(t);
                for (auto k : {EquivKind::consequence, EquivKind::faithful}) {
                    ++checked;
                    EXPECT_EQ(redundant_clause_dl(t, g, sem, k).redundant,
                              redundant_default(moved, moved.size() - 1, sem, k).redundant)
                        << print_theory(t) << to_string(g);
                }
            }
        }
    }
    EXPECT_GT(checked, 200);
}

TEST(RedundantDefaultSet, WitnessMatchesOracleSearchOrder) {
    gen::Rng r(103);
    for (int i = 0; i < 120; ++i) {
        DefaultTheory t = gen::theory(r, {});
        for (auto sem : all_semantics)
            for (auto k : all_equiv_kinds) {
                DlVerdict v = redundant_default_set(t, sem, k);
                auto want = oracle_default_witness(t, sem, k);
                EXPECT_EQ(v.redundant, want.has_value()) << print_theory(t);
                if (want) {
                    EXPECT_EQ(*v.witness_subset, *want);
                }
            }
    }
}

// Under justified semantics an irredundant-looking theory (no single default
// removable) has no equivalent proper subset at all.
TEST(RedundantDefaultSet, JustifiedIsLocal) {
    gen::Rng r(107);
    gen::TheoryShape shape;
    shape.max_defaults = 4;
    int irredundant = 0;
    for (int i = 0; i < 300; ++i) {
        DefaultTheory t = gen::theory(r, shape);
        bool single = false;
        for (std::size_t d = 0; d < t.size(); ++d)
            single = single || redundant_default(t, d, Semantics::justified, EquivKind::faithful).redundant;
        if (!single) ++irredundant;
        EXPECT_EQ(redundant_default_set(t, Semantics::justified, EquivKind::faithful).redundant, single)
            << print_theory(t);
    }
    EXPECT_GT(irredundant, 20);
}

// D' ⊆ D'' ⊆ D with ⟨D', W⟩ ≡ ⟨D, W⟩ (justified, faithful) ⇒ ⟨D', W⟩ ≡ ⟨D'', W⟩.
TEST(RedundantDefaultSet, JustifiedSandwich) {
    gen::Rng r(109);
    int applicable = 0;
    for (int i = 0; i < 150; ++i) {
        DefaultTheory t = gen::theory(r, {});
        const std::uint64_t all = (std::uint64_t{1} << t.size()) - 1;
        for (std::uint64_t lo = 0; lo <= all; ++lo) {
            if (!dl_equivalent(t.restrict_defaults(lo), t, Semantics::justified, EquivKind::faithful)) continue;
            for (std::uint64_t mid = lo; mid <= all; ++mid) {
                if ((mid & lo) != lo) continue;
                ++applicable;
                EXPECT_TRUE(dl_equivalent(t.restrict_defaults(lo), t.restrict_defaults(mid), Semantics::justified,
                                          EquivKind::faithful))
                    << print_theory(t);
            }
        }
    }
    EXPECT_GT(applicable, 100);
}
