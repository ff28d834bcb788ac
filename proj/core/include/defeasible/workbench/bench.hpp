#pragma once

#include "defeasible/model.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <string>

namespace defeasible::workbench {

struct TagRecord {
    Tag tag;
    double best_ms = 0;
    double mean_ms = 0;
    std::size_t plus = 0;
    std::size_t minus = 0;
    std::size_t undecided = 0;
};

struct BenchRecord {
    std::string source;
    std::size_t atoms = 0;
    std::size_t rules = 0;
    std::size_t facts = 0;
    std::size_t superiority = 0;
    std::size_t repeats = 0;
    std::vector<TagRecord> tags;
    /// Planned route for each conventional target.
    std::vector<std::pair<Tag, std::string>> routes;
};

BenchRecord run_bench(const Theory& theory, std::size_t repeats, std::string source = {});

nlohmann::json to_json(const BenchRecord& record);

}  // namespace defeasible::workbench
