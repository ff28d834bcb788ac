#include "support.hpp"

#include "defeasible/analysis.hpp"
#include "defeasible/engine.hpp"
#include "defeasible/workbench/generator.hpp"

#include <gtest/gtest.h>

using namespace defeasible;
using testing_support::corpus;
using testing_support::lit;
using Names = std::set<std::string>;

namespace {

Names names(const Theory& t, const std::vector<Literal>& v) {
    Names out;
    for (auto q : v) out.insert(t.literal_name(q));
    return out;
}

Names rule_labels(const Theory& t) {
    Names out;
    for (const auto& r : t.rules()) out.insert(r.label);
    return out;
}

}  // namespace

TEST(Graph, EdgesRunHeadToBody) {
    const Theory t = corpus("cascade.dl");
    const DependencyGraph g = dependency_graph(t, RuleScope::All, false);
    EXPECT_EQ(g.node_count(), t.literal_count());
    EXPECT_TRUE(g.has_edge(lit(t, "~p").id(), lit(t, "q").id()));
    EXPECT_FALSE(g.has_edge(lit(t, "q").id(), lit(t, "~p").id()));
    const DependencyGraph m = dependency_graph(t, RuleScope::All, true);
    EXPECT_EQ(m.node_count(), t.atom_count());
    EXPECT_TRUE(m.has_edge(lit(t, "p").atom(), lit(t, "q").atom()));
}

TEST(Graph, ScopeFiltersRules) {
    const Theory t = load_theory("r: p -> q.\ns: p => r.\nd: p ~> s.");
    EXPECT_TRUE(dependency_graph(t, RuleScope::Strict, false).has_edge(lit(t, "q").id(), lit(t, "p").id()));
    EXPECT_FALSE(dependency_graph(t, RuleScope::Strict, false).has_edge(lit(t, "r").id(), lit(t, "p").id()));
    EXPECT_TRUE(dependency_graph(t, RuleScope::StrictDefeasible, false).has_edge(lit(t, "r").id(), lit(t, "p").id()));
    EXPECT_FALSE(dependency_graph(t, RuleScope::StrictDefeasible, false).has_edge(lit(t, "s").id(), lit(t, "p").id()));
    EXPECT_TRUE(dependency_graph(t, RuleScope::All, false).has_edge(lit(t, "s").id(), lit(t, "p").id()));
}

TEST(Graph, ComponentsInReverseTopologicalOrder) {
    const Theory t = load_theory("a: b => c.\nb: c => b.\nc: d => b.\nd: => d.");
    const DependencyGraph g = dependency_graph(t, RuleScope::All, true);
    const auto comps = strongly_connected_components(g);
    std::vector<std::size_t> where(g.node_count());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        for (auto n : comps[i]) where[n] = i;
    }
    std::size_t total = 0;
    for (const auto& c : comps) total += c.size();
    EXPECT_EQ(total, g.node_count());
    for (std::uint32_t u = 0; u < g.node_count(); ++u) {
        for (auto v : g.successors[u]) EXPECT_LE(where[v], where[u]);
    }
    EXPECT_EQ(where[lit(t, "b").atom()], where[lit(t, "c").atom()]);
}

TEST(Graph, CyclicNodes) {
    const Theory t = load_theory("a: b => c.\nb: c => b.\nc: d => e.");
    const auto cyc = cyclic_nodes(dependency_graph(t, RuleScope::All, true));
    EXPECT_TRUE(cyc[lit(t, "b").atom()]);
    EXPECT_TRUE(cyc[lit(t, "c").atom()]);
    EXPECT_FALSE(cyc[lit(t, "d").atom()]);
    EXPECT_FALSE(cyc[lit(t, "e").atom()]);
}

TEST(Layers, TweetyIsLayered) {
    const Theory t = corpus("tweety.dl");
    const DependencyGraph g = dependency_graph(t, RuleScope::All, true);
    const auto layers = layer_map(g);
    ASSERT_TRUE(layers.has_value());
    EXPECT_TRUE(layer_map_admissible(t, *layers, RuleScope::All, true));
    EXPECT_EQ((*layers)[lit(t, "penguin(tweety)").atom()], 0u);
    EXPECT_EQ((*layers)[lit(t, "bird(tweety)").atom()], 1u);
    EXPECT_EQ((*layers)[lit(t, "fly(tweety)").atom()], 2u);
}

TEST(Layers, CycleHasNoLayerMap) {
    EXPECT_FALSE(layer_map(dependency_graph(corpus("selfloop.dl"), RuleScope::All, true)).has_value());
}

TEST(Layers, FlatMapIsNotAdmissible) {
    const Theory t = corpus("tweety.dl");
    EXPECT_FALSE(layer_map_admissible(t, std::vector<std::uint32_t>(t.atom_count(), 0), RuleScope::All, true));
}

TEST(Loops, SelfLoop) {
    const Theory t = corpus("selfloop.dl");
    const LoopReport r = detect_loops(t);
    EXPECT_EQ(names(t, r.looping), (Names{"q", "~q"}));
    EXPECT_EQ(names(t, r.self_loops), Names{"q"});
    EXPECT_EQ(names(t, r.strict_loops), Names{"q"});
    EXPECT_EQ(names(t, r.sd_loops), Names{"q"});
}

TEST(Loops, NegativeLoop) {
    const Theory t = load_theory("r: ~p -> ~p.");
    const LoopReport r = detect_loops(t);
    EXPECT_EQ(names(t, r.looping), (Names{"p", "~p"}));
    EXPECT_EQ(names(t, r.self_loops), Names{"~p"});
}

TEST(Loops, ThroughComplementOnlyMerged) {
    const Theory t = load_theory("r: p => ~p.");
    const LoopReport r = detect_loops(t);
    EXPECT_EQ(names(t, r.looping), (Names{"p", "~p"}));
    EXPECT_TRUE(r.self_loops.empty());
}

TEST(Loops, DefeaterLoopIsNotSd) {
    const Theory t = load_theory("r: p ~> p.\ns: q => q.");
    const LoopReport r = detect_loops(t);
    EXPECT_EQ(names(t, r.self_loops), (Names{"p", "q"}));
    EXPECT_EQ(names(t, r.sd_loops), Names{"q"});
    EXPECT_TRUE(r.strict_loops.empty());
}

TEST(Conflicts, TeamDefeat) {
    const Theory t = corpus("team_defeat.dl");
    EXPECT_EQ(names(t, conflicted_literals(t)), (Names{"q", "~q"}));
}

TEST(Conflicts, FactsCountAsRules) {
    const Theory t = corpus("masked_conflict_2.dl");
    EXPECT_EQ(names(t, conflicted_literals(t)), (Names{"q", "~q"}));
}

TEST(Conflicts, DefeatersCount) {
    const Theory t = corpus("tweety.dl");
    EXPECT_EQ(names(t, conflicted_literals(t)), (Names{"fly(tweety)", "~fly(tweety)", "fly(freddie)", "~fly(freddie)"}));
}

TEST(Structure, Classification) {
    const StructureReport tw = classify_structure(corpus("tweety.dl"));
    EXPECT_TRUE(tw.hierarchical);
    EXPECT_TRUE(tw.semi_hierarchical);
    EXPECT_FALSE(tw.fact_deficient);
    EXPECT_FALSE(tw.empty_superiority);
    EXPECT_TRUE(tw.atom_layers.has_value());

    const StructureReport sl = classify_structure(corpus("selfloop.dl"));
    EXPECT_FALSE(sl.hierarchical);
    EXPECT_FALSE(sl.strict_semi_hierarchical);
    EXPECT_TRUE(sl.fact_deficient);
    EXPECT_TRUE(sl.empty_superiority);

    const StructureReport nl = classify_structure(load_theory("r: p => ~p.\ns: => p."));
    EXPECT_FALSE(nl.hierarchical);
    EXPECT_TRUE(nl.semi_hierarchical);
    EXPECT_TRUE(nl.literal_layers.has_value());
}

TEST(Structure, FactDeficiency) {
    EXPECT_TRUE(is_fact_deficient(corpus("ambiguity.dl")));
    EXPECT_FALSE(is_fact_deficient(corpus("masked_conflict_2.dl")));
    EXPECT_FALSE(is_fact_deficient(load_theory("r: -> p.")));
}

TEST(Structure, JsonHasFlags) {
    const Theory t = corpus("cascade.dl");
    const auto j = to_json(t, classify_structure(t));
    EXPECT_TRUE(j["hierarchical"].get<bool>());
    EXPECT_EQ(j["conflicted_literals"].size(), 4u);
}

TEST(Decisiveness, HierarchicalIsSyntactic) {
    const auto c = certify_decisiveness(corpus("tweety.dl"), Tag::Partial);
    EXPECT_EQ(c.status, CertStatus::CertifiedSyntactic);
    EXPECT_EQ(c.basis, "hierarchical");
}

TEST(Decisiveness, DeltaWithoutStrictRules) {
    const auto c = certify_decisiveness(corpus("masked_loop_2.dl"), Tag::Delta);
    EXPECT_EQ(c.status, CertStatus::CertifiedSyntactic);
    EXPECT_EQ(c.basis, "no-strict-rules");
}

TEST(Decisiveness, StrictSemiHierarchical) {
    const auto c = certify_decisiveness(load_theory("r: p => p.\ns: p -> q."), Tag::Delta);
    EXPECT_EQ(c.basis, "strict-semi-hierarchical");
}

TEST(Decisiveness, SelfLoopFailsSemanticCheck) {
    const Theory t = corpus("selfloop.dl");
    const auto c = certify_decisiveness(t, Tag::Delta);
    EXPECT_EQ(c.status, CertStatus::Unknown);
    EXPECT_EQ(c.basis, "closure");
    EXPECT_EQ(names(t, c.witnesses), Names{"q"});
    const auto no_semantic = certify_decisiveness(t, Tag::Delta, false);
    EXPECT_EQ(no_semantic.status, CertStatus::Unknown);
    EXPECT_TRUE(no_semantic.witnesses.empty());
}

TEST(Decisiveness, SemanticSuccess) {
    const Theory t = corpus("selfloop.dl");
    const auto c = certify_decisiveness(t, Tag::Partial);
    EXPECT_EQ(c.status, CertStatus::CertifiedSemantic);
    EXPECT_TRUE(c.certified());
    EXPECT_EQ(to_json(t, c)["status"], "certified-semantic");
}

TEST(UndecidedCheck, HoldsOnPartialDecisiveTheories) {
    for (const char* name : {"selfloop.dl", "masked_loop_2.dl", "tweety.dl"}) {
        const Theory t = corpus(name);
        ClosureSet c = compute_closure(t, Tag::Partial);
        c.merge(compute_closure(t, Tag::Lambda));
        EXPECT_TRUE(check_undecided_lemma(t, c).empty()) << name;
    }
    int checked = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        workbench::GenSpec spec;
        spec.strict_weight = 3;
        spec.seed = seed;
        const Theory t = workbench::generate(spec);
        ClosureSet c = compute_closure(t, Tag::Partial);
        if (c.count(Tag::Partial, Status::Undecided) != 0) continue;
        ++checked;
        c.merge(compute_closure(t, Tag::Lambda));
        EXPECT_TRUE(check_undecided_lemma(t, c).empty()) << seed;
    }
    EXPECT_GT(checked, 20);
}

TEST(UndecidedCheck, ReportsMissingConclusions) {
    const Theory t = corpus("selfloop.dl");
    ClosureSet c = compute_closure(t, Tag::Lambda);
    std::vector<Status> broken(t.literal_count(), Status::Undecided);
    c.set_tag(Tag::Partial, broken);
    EXPECT_EQ(check_undecided_lemma(t, c).size(), 2u);
}

TEST(Simplify, TweetyDropsUnusableInstances) {
    const Theory t = corpus("tweety.dl");
    const Theory s = simplify(t);
    EXPECT_EQ(rule_labels(s), (Names{"r1#0", "r1#1", "r2#0", "r3#0", "r4#1"}));
    EXPECT_EQ(s.superiority().size(), 2u);
    EXPECT_EQ(s.atom_count(), t.atom_count());
}

TEST(Simplify, FactsRemoveCompetingRules) {
    const Theory s = simplify(corpus("masked_conflict_2.dl"));
    EXPECT_TRUE(s.rules().empty());
}

TEST(Simplify, CascadesToFixpoint) {
    const Theory s = simplify(corpus("masked_loop_1.dl"));
    EXPECT_EQ(rule_labels(s), Names{"s"});
}

TEST(Simplify, PreservesNonSupportConclusions) {
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        workbench::GenSpec spec;
        spec.facts = 3;
        spec.seed = seed;
        const Theory t = workbench::generate(spec);
        const ClosureSet a = compute_all(t);
        const ClosureSet b = compute_all(simplify(t));
        for (Tag tag : {Tag::Delta, Tag::Lambda, Tag::PartialPar, Tag::PartialParStar, Tag::Partial, Tag::PartialStar}) {
            EXPECT_TRUE(std::ranges::equal(a.statuses(tag), b.statuses(tag))) << seed << " " << tag_name(tag);
        }
    }
}

// A fact for q removes the defeasible rule for ~q, which was the only support for ~q.
TEST(Simplify, SupportChangesWhenAFactSettlesAConflict) {
    const Theory t = corpus("masked_conflict_2.dl");
    const Literal nq = lit(t, "~q");
    EXPECT_EQ(compute_closure(t, Tag::Supp).status(Tag::Supp, nq), Status::Plus);
    EXPECT_EQ(compute_closure(simplify(t), Tag::Supp).status(Tag::Supp, nq), Status::Minus);
}

TEST(Regime, IndependentConflictsSubstitute) {
    const Theory t = corpus("tweety.dl");
    const auto c = classify_regime(t, Tag::Partial);
    EXPECT_EQ(c.regime, Regime::ExactSubstitution);
    EXPECT_EQ(c.basis, "equiv-theorem");
    EXPECT_EQ(c.via, Tag::PartialPar);
    EXPECT_EQ(classify_regime(t, Tag::PartialStar).via, Tag::PartialParStar);
    EXPECT_TRUE(reverify(t, c));
}

TEST(Regime, HierarchicalContainment) {
    const Theory t = corpus("cascade.dl");
    const auto c = classify_regime(t, Tag::Partial);
    EXPECT_EQ(c.regime, Regime::UnderApprox);
    EXPECT_EQ(c.basis, "hierarchical-containment");
    EXPECT_TRUE(reverify(t, c));
}

TEST(Regime, ConflictOnLoopHasNoCertificate) {
    const auto c = classify_regime(corpus("confloop.dl"), Tag::Partial);
    EXPECT_EQ(c.regime, Regime::None);
    EXPECT_TRUE(c.preconditions.empty());
}

TEST(Regime, FactDeficientEquality) {
    const auto c = classify_regime(corpus("ambiguity.dl"), Tag::DeltaAp);
    EXPECT_EQ(c.regime, Regime::ExactEquality);
    EXPECT_EQ(c.basis, "fact-deficient-equality");
}

TEST(Regime, SupportContainment) {
    const auto c = classify_regime(corpus("ambiguity.dl"), Tag::Supp);
    EXPECT_EQ(c.regime, Regime::UnderApprox);
    EXPECT_EQ(c.basis, "decisive-support-containment");
}

TEST(Regime, RejectsNonTargets) { EXPECT_THROW(classify_regime(corpus("tweety.dl"), Tag::Lambda), std::invalid_argument); }

TEST(Regime, ReverifyCatchesAForeignTheory) {
    const auto c = classify_regime(corpus("cascade.dl"), Tag::Partial);
    EXPECT_FALSE(reverify(corpus("selfloop.dl"), c));
}

TEST(Regime, PreconditionDescriptions) {
    Precondition p{Precondition::Kind::Decisive, Tag::Lambda, CertStatus::CertifiedSemantic};
    EXPECT_NE(p.describe().find("lambda"), std::string::npos);
    EXPECT_EQ(regime_name(Regime::OverApprox), "over-approx");
}

TEST(Regime, JsonNamesFields) {
    const auto j = to_json(classify_regime(corpus("tweety.dl"), Tag::Partial));
    EXPECT_EQ(j["regime"], "exact-substitution");
    EXPECT_EQ(j["via"], "partial_par");
    EXPECT_EQ(j["preconditions"].size(), 2u);
}
