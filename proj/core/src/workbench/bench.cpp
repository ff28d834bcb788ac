#include "defeasible/workbench/bench.hpp"

#include "defeasible/engine.hpp"
#include "defeasible/pipeline.hpp"

#include <algorithm>
#include <chrono>

namespace defeasible::workbench {

BenchRecord run_bench(const Theory& theory, std::size_t repeats, std::string source) {
    BenchRecord rec;
    rec.source = std::move(source);
    rec.atoms = theory.atom_count();
    rec.rules = theory.rules().size();
    rec.facts = theory.facts().size();
    rec.superiority = theory.superiority().size();
    rec.repeats = std::max<std::size_t>(repeats, 1);

    for (Tag tag : kAllTags) {
        TagRecord t{tag};
        double total = 0;
        t.best_ms = -1;
        ClosureSet last;
        for (std::size_t i = 0; i < rec.repeats; ++i) {
            const auto start = std::chrono::steady_clock::now();
            last = compute_closure(theory, tag);
            const std::chrono::duration<double, std::milli> d = std::chrono::steady_clock::now() - start;
            total += d.count();
            if (t.best_ms < 0 || d.count() < t.best_ms) t.best_ms = d.count();
        }
        t.mean_ms = total / static_cast<double>(rec.repeats);
        t.plus = last.count(tag, Status::Plus);
        t.minus = last.count(tag, Status::Minus);
        t.undecided = last.count(tag, Status::Undecided);
        rec.tags.push_back(t);
    }
    for (Tag target : {Tag::Partial, Tag::PartialStar, Tag::DeltaAp, Tag::DeltaApStar, Tag::Supp, Tag::SuppStar}) {
        rec.routes.emplace_back(target, std::string(route_name(plan(theory, target).route)));
    }
    return rec;
}

nlohmann::json to_json(const BenchRecord& record) {
    auto tags = nlohmann::json::array();
    for (const auto& t : record.tags) {
        tags.push_back({{"tag", tag_name(t.tag)},
                        {"best_ms", t.best_ms},
                        {"mean_ms", t.mean_ms},
                        {"plus", t.plus},
                        {"minus", t.minus},
                        {"undecided", t.undecided}});
    }
    nlohmann::json routes = nlohmann::json::object();
    for (const auto& [tag, route] : record.routes) routes[std::string(tag_name(tag))] = route;
    return {
        {"source", record.source},
        {"atoms", record.atoms},
        {"literals", 2 * record.atoms},
        {"rules", record.rules},
        {"facts", record.facts},
        {"superiority", record.superiority},
        {"repeats", record.repeats},
        {"tags", tags},
        {"routes", routes},
    };
}

}  // namespace defeasible::workbench
