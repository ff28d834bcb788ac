#pragma once

// Uses partial_par to compute (or approximate) a conventional closure when a regime
// certificate allows it, and reports which route was taken.

#include "defeasible/analysis.hpp"
#include "defeasible/model.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace defeasible {

enum class Route { Substitute, Preprocess, OverApproxFilter, Direct };

std::string_view route_name(Route r);

struct PipelinePlan {
    Tag target = Tag::Partial;
    Route route = Route::Direct;
    RegimeCertificate certificate;
};

/// Substitute for exact regimes, Preprocess for under-approximations, OverApproxFilter
/// only when `negative_queries` is set, Direct otherwise. Tags outside the six
/// conventional targets always plan Direct.
PipelinePlan plan(const Theory& theory, Tag target, bool negative_queries = false);

struct PhaseTiming {
    std::string phase;
    double ms = 0;
};

struct Provenance {
    Route route = Route::Direct;
    std::string basis;
    /// Literals decided (either sign) by the partial_par run, when there was one.
    std::size_t decided_by_partial_par = 0;
    /// Positive target conclusions injected before the fixpoint (all of them for Substitute).
    std::size_t seeded = 0;
    /// Positive target conclusions derived by the target engine itself.
    std::size_t residual = 0;
    std::vector<PhaseTiming> phases;
};

struct PipelineResult {
    /// Holds the target tag.
    ClosureSet closure;
    Provenance provenance;
};

/// Throws std::invalid_argument for OverApproxFilter plans, which answer queries only.
PipelineResult execute(const Theory& theory, const PipelinePlan& plan);

enum class FilterAnswer { DefinitelyNotPlus, Unknown };

class PreconditionViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// target ∈ {DeltaAp, DeltaApStar}. Throws PreconditionViolation unless the theory is
/// fact-deficient with an empty superiority relation.
FilterAnswer negative_query_filter(const Theory& theory, Tag target, Literal literal);

struct ComparisonDiff {
    struct Entry {
        Literal literal;
        Status a;
        Status b;
    };
    Tag a = Tag::PartialPar;
    Tag b = Tag::Partial;
    /// Literals whose status differs, in literal id order.
    std::vector<Entry> entries;
    std::size_t agreements = 0;
    std::vector<Literal> only_a_plus;
    std::vector<Literal> only_b_plus;

    bool empty() const { return entries.empty(); }
    bool a_plus_within_b() const { return only_a_plus.empty(); }
    bool b_plus_within_a() const { return only_b_plus.empty(); }
};

ComparisonDiff compare(const Theory& theory, Tag a, Tag b);

nlohmann::json to_json(const PipelinePlan& plan, const Provenance& provenance);
nlohmann::json to_json(const Theory& theory, const ComparisonDiff& diff);

}  // namespace defeasible
