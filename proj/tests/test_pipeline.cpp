#include "support.hpp"

#include "defeasible/engine.hpp"
#include "defeasible/pipeline.hpp"
#include "defeasible/workbench/generator.hpp"

#include <gtest/gtest.h>

using namespace defeasible;
using testing_support::corpus;
using testing_support::lit;

namespace {

bool same_tag(const ClosureSet& a, const ClosureSet& b, Tag tag) {
    return std::ranges::equal(a.statuses(tag), b.statuses(tag));
}

}  // namespace

TEST(Plan, RoutesFollowTheRegime) {
    EXPECT_EQ(plan(corpus("tweety.dl"), Tag::Partial).route, Route::Substitute);
    EXPECT_EQ(plan(corpus("cascade.dl"), Tag::Partial).route, Route::Preprocess);
    EXPECT_EQ(plan(corpus("confloop.dl"), Tag::Partial).route, Route::Direct);
    EXPECT_EQ(plan(corpus("tweety.dl"), Tag::Lambda).route, Route::Direct);
}

TEST(Plan, OverApproxOnlyForNegativeQueries) {
    const Theory t = corpus("confloop.dl");
    const auto reg = classify_regime(t, Tag::DeltaAp);
    ASSERT_EQ(reg.regime, Regime::OverApprox);
    EXPECT_EQ(plan(t, Tag::DeltaAp).route, Route::Direct);
    const PipelinePlan p = plan(t, Tag::DeltaAp, true);
    EXPECT_EQ(p.route, Route::OverApproxFilter);
    EXPECT_THROW(execute(t, p), std::invalid_argument);
}

TEST(Execute, SubstituteMatchesDirect) {
    const Theory t = corpus("tweety.dl");
    const PipelineResult r = execute(t, plan(t, Tag::Partial));
    EXPECT_TRUE(same_tag(r.closure, compute_closure(t, Tag::Partial), Tag::Partial));
    EXPECT_EQ(r.provenance.route, Route::Substitute);
    EXPECT_EQ(r.provenance.basis, "equiv-theorem");
    EXPECT_EQ(r.provenance.seeded, 5u);
    EXPECT_EQ(r.provenance.residual, 0u);
    EXPECT_EQ(r.provenance.decided_by_partial_par, t.literal_count());
    ASSERT_EQ(r.provenance.phases.size(), 1u);
    EXPECT_EQ(r.provenance.phases[0].phase, "partial_par");
    EXPECT_EQ(r.closure.tags(), std::vector<Tag>{Tag::Partial});
}

TEST(Execute, PreprocessMatchesDirect) {
    const Theory t = corpus("cascade.dl");
    const PipelineResult r = execute(t, plan(t, Tag::Partial));
    EXPECT_TRUE(same_tag(r.closure, compute_closure(t, Tag::Partial), Tag::Partial));
    EXPECT_EQ(r.provenance.route, Route::Preprocess);
    EXPECT_EQ(r.provenance.phases.size(), 2u);
    EXPECT_EQ(r.provenance.phases[1].phase, "kickstart-partial");
    EXPECT_EQ(r.provenance.seeded + r.provenance.residual, r.closure.count(Tag::Partial, Status::Plus));
}

TEST(Execute, DirectMatches) {
    const Theory t = corpus("confloop.dl");
    const PipelineResult r = execute(t, plan(t, Tag::Partial));
    EXPECT_TRUE(same_tag(r.closure, compute_closure(t, Tag::Partial), Tag::Partial));
    EXPECT_EQ(r.provenance.seeded, 0u);
}

TEST(Execute, EveryRouteIsCorrectOnRandomTheories) {
    using workbench::Shape;
    std::map<Route, int> seen;
    for (Shape shape : {Shape::Free, Shape::Hierarchical, Shape::FactDeficient, Shape::ConflictChainFree}) {
        for (std::uint64_t seed = 1; seed <= 10; ++seed) {
            workbench::GenSpec spec;
            spec.shape = shape;
            spec.seed = seed;
            const Theory t = workbench::generate(spec);
            for (Tag target : {Tag::Partial, Tag::PartialStar, Tag::DeltaAp, Tag::DeltaApStar, Tag::Supp, Tag::SuppStar}) {
                const PipelinePlan p = plan(t, target);
                ++seen[p.route];
                const PipelineResult r = execute(t, p);
                const ClosureSet direct = compute_closure(t, target);
                EXPECT_TRUE(same_tag(r.closure, direct, target))
                    << workbench::shape_name(shape) << " " << seed << " " << tag_name(target);
            }
        }
    }
    EXPECT_GT(seen[Route::Substitute], 0);
    EXPECT_GT(seen[Route::Preprocess], 0);
    EXPECT_GT(seen[Route::Direct], 0);
}

TEST(Filter, NeverRejectsAProvableLiteral) {
    const Theory t = corpus("ambiguity.dl");
    const ClosureSet d = compute_closure(t, Tag::DeltaAp);
    for (std::uint32_t id = 0; id < t.literal_count(); ++id) {
        const Literal q = Literal::from_id(id);
        if (d.status(Tag::DeltaAp, q) == Status::Plus) {
            EXPECT_EQ(negative_query_filter(t, Tag::DeltaAp, q), FilterAnswer::Unknown);
        }
    }
    EXPECT_EQ(negative_query_filter(t, Tag::DeltaAp, lit(t, "~q")), FilterAnswer::DefinitelyNotPlus);
}

TEST(Filter, RefusesWithoutCertificate) {
    const Theory t = corpus("team_defeat.dl");
    try {
        negative_query_filter(t, Tag::DeltaAp, lit(t, "q"));
        FAIL() << "expected a precondition violation";
    } catch (const PreconditionViolation& e) {
        EXPECT_EQ(std::string(e.what()).rfind("certificate absent", 0), 0u);
    }
    EXPECT_THROW(negative_query_filter(corpus("tweety.dl"), Tag::DeltaAp, lit(corpus("tweety.dl"), "fly(tweety)")),
                 PreconditionViolation);
}

TEST(Filter, OnlyForDeltaAp) {
    const Theory t = corpus("ambiguity.dl");
    EXPECT_THROW(negative_query_filter(t, Tag::Partial, lit(t, "q")), std::invalid_argument);
}

TEST(Compare, TeamDefeat) {
    const Theory t = corpus("team_defeat.dl");
    const ComparisonDiff d = compare(t, Tag::Partial, Tag::PartialStar);
    ASSERT_EQ(d.entries.size(), 1u);
    EXPECT_EQ(t.literal_name(d.entries[0].literal), "q");
    EXPECT_EQ(d.entries[0].a, Status::Plus);
    EXPECT_EQ(d.entries[0].b, Status::Minus);
    EXPECT_FALSE(d.a_plus_within_b());
    EXPECT_TRUE(d.b_plus_within_a());
    EXPECT_EQ(d.agreements, 1u);
}

TEST(Compare, SameTagIsEmpty) {
    const Theory t = corpus("tweety.dl");
    const ComparisonDiff d = compare(t, Tag::Lambda, Tag::Lambda);
    EXPECT_TRUE(d.empty());
    EXPECT_EQ(d.agreements, t.literal_count());
}

TEST(Compare, Json) {
    const Theory t = corpus("team_defeat.dl");
    const auto j = to_json(t, compare(t, Tag::Partial, Tag::PartialStar));
    EXPECT_EQ(j["differences"][0]["literal"], "q");
    EXPECT_EQ(j["differences"][0]["partial"], "plus");
    EXPECT_EQ(j["differences"][0]["partial_star"], "minus");
}

TEST(Provenance, Json) {
    const Theory t = corpus("tweety.dl");
    const PipelinePlan p = plan(t, Tag::Partial);
    const auto j = to_json(p, execute(t, p).provenance);
    EXPECT_EQ(j["route"], "substitute");
    EXPECT_EQ(j["certificate"]["basis"], "equiv-theorem");
    EXPECT_EQ(j["seeded"], 5);
}
