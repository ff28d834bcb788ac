#include "defeasible/pipeline.hpp"

#include "defeasible/engine.hpp"

#include <chrono>

namespace defeasible {

std::string_view route_name(Route r) {
    switch (r) {
        case Route::Substitute: return "substitute";
        case Route::Preprocess: return "preprocess";
        case Route::OverApproxFilter: return "over-approx-filter";
        case Route::Direct: return "direct";
    }
    return "?";
}

namespace {

bool is_target(Tag t) {
    switch (t) {
        case Tag::Partial:
        case Tag::PartialStar:
        case Tag::DeltaAp:
        case Tag::DeltaApStar:
        case Tag::Supp:
        case Tag::SuppStar: return true;
        default: return false;
    }
}

class Stopwatch {
public:
    explicit Stopwatch(std::vector<PhaseTiming>& out) : out_(out) {}

    template <class F>
    auto time(std::string phase, F&& f) {
        const auto start = std::chrono::steady_clock::now();
        auto result = f();
        const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
        out_.push_back({std::move(phase), elapsed.count()});
        return result;
    }

private:
    std::vector<PhaseTiming>& out_;
};

ClosureSet only(const ClosureSet& from, Tag source, Tag target) {
    ClosureSet out(from.literal_count());
    out.copy_tag(from, source, target);
    return out;
}

}  // namespace

PipelinePlan plan(const Theory& theory, Tag target, bool negative_queries) {
    PipelinePlan p;
    p.target = target;
    p.certificate.target = target;
    if (!is_target(target)) return p;
    p.certificate = classify_regime(theory, target);
    switch (p.certificate.regime) {
        case Regime::ExactSubstitution:
        case Regime::ExactEquality: p.route = Route::Substitute; break;
        case Regime::UnderApprox: p.route = Route::Preprocess; break;
        case Regime::OverApprox: p.route = negative_queries ? Route::OverApproxFilter : Route::Direct; break;
        case Regime::None: p.route = Route::Direct; break;
    }
    return p;
}

PipelineResult execute(const Theory& theory, const PipelinePlan& plan) {
    PipelineResult result;
    Provenance& prov = result.provenance;
    prov.route = plan.route;
    prov.basis = plan.certificate.basis;
    Stopwatch watch(prov.phases);
    const Tag target = plan.target;
    const Tag via = plan.certificate.via;

    switch (plan.route) {
        case Route::Substitute: {
            const ClosureSet pp = watch.time(std::string(tag_name(via)), [&] { return compute_closure(theory, via); });
            result.closure = only(pp, via, target);
            prov.decided_by_partial_par = theory.literal_count() - pp.count(via, Status::Undecided);
            prov.seeded = pp.count(via, Status::Plus);
            break;
        }
        case Route::Preprocess: {
            const ClosureSet pp = watch.time(std::string(tag_name(via)), [&] { return compute_closure(theory, via); });
            const auto seed = pp.positives(via);
            const ClosureSet full = watch.time("kickstart-" + std::string(tag_name(target)),
                                               [&] { return kickstart_closure(theory, target, seed); });
            result.closure = only(full, target, target);
            prov.decided_by_partial_par = theory.literal_count() - pp.count(via, Status::Undecided);
            prov.seeded = seed.size();
            const std::size_t plus = full.count(target, Status::Plus);
            prov.residual = plus >= seed.size() ? plus - seed.size() : 0;
            break;
        }
        case Route::Direct: {
            const ClosureSet full =
                watch.time(std::string(tag_name(target)), [&] { return compute_closure(theory, target); });
            result.closure = only(full, target, target);
            prov.residual = full.count(target, Status::Plus);
            break;
        }
        case Route::OverApproxFilter:
            throw std::invalid_argument("over-approximation plans answer negative queries only");
    }
    return result;
}

FilterAnswer negative_query_filter(const Theory& theory, Tag target, Literal literal) {
    if (target != Tag::DeltaAp && target != Tag::DeltaApStar) {
        throw std::invalid_argument("negative_query_filter: target must be delta_ap or delta_ap_star");
    }
    if (!is_fact_deficient(theory) || !theory.superiority().empty()) {
        throw PreconditionViolation(
            "certificate absent: the over-approximation needs a fact-deficient theory with empty superiority");
    }
    const Tag via = target == Tag::DeltaAp ? Tag::PartialPar : Tag::PartialParStar;
    const ClosureSet pp = compute_closure(theory, via);
    return pp.status(via, literal) == Status::Plus ? FilterAnswer::Unknown : FilterAnswer::DefinitelyNotPlus;
}

ComparisonDiff compare(const Theory& theory, Tag a, Tag b) {
    ComparisonDiff diff;
    diff.a = a;
    diff.b = b;
    const ClosureSet ca = compute_closure(theory, a);
    const ClosureSet cb = a == b ? ca : compute_closure(theory, b);
    for (std::uint32_t id = 0; id < theory.literal_count(); ++id) {
        const Literal q = Literal::from_id(id);
        const Status sa = ca.status(a, q);
        const Status sb = cb.status(b, q);
        if (sa == sb) {
            ++diff.agreements;
            continue;
        }
        diff.entries.push_back({q, sa, sb});
        if (sa == Status::Plus) diff.only_a_plus.push_back(q);
        if (sb == Status::Plus) diff.only_b_plus.push_back(q);
    }
    return diff;
}

nlohmann::json to_json(const PipelinePlan& plan, const Provenance& provenance) {
    auto phases = nlohmann::json::array();
    for (const auto& p : provenance.phases) phases.push_back({{"phase", p.phase}, {"ms", p.ms}});
    return {
        {"target", tag_name(plan.target)},
        {"route", route_name(provenance.route)},
        {"certificate", to_json(plan.certificate)},
        {"basis", provenance.basis},
        {"decided_by_partial_par", provenance.decided_by_partial_par},
        {"seeded", provenance.seeded},
        {"residual", provenance.residual},
        {"phases", phases},
    };
}

nlohmann::json to_json(const Theory& theory, const ComparisonDiff& diff) {
    auto entries = nlohmann::json::array();
    for (const auto& e : diff.entries) {
        entries.push_back({{"literal", theory.literal_name(e.literal)},
                           {tag_name(diff.a), status_name(e.a)},
                           {tag_name(diff.b), status_name(e.b)}});
    }
    return {
        {"a", tag_name(diff.a)},
        {"b", tag_name(diff.b)},
        {"agreements", diff.agreements},
        {"differences", entries},
        {"a_plus_within_b", diff.a_plus_within_b()},
        {"b_plus_within_a", diff.b_plus_within_a()},
    };
}

}  // namespace defeasible
