#pragma once

// Seeded random theories with structural guarantees.

#include "defeasible/model.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace defeasible::workbench {

enum class Shape {
    Free,
    Hierarchical,
    FactDeficient,
    /// No conflicted atom depends on a conflicted or looping atom.
    ConflictChainFree,
    /// Every atom has rules (and facts) of one sign only.
    ConflictFree,
    /// Strict rules admit a literal layer map.
    StrictSemiHierarchical,
    /// Strict and defeasible rules admit a literal layer map.
    SdSemiHierarchical,
};

std::string_view shape_name(Shape s);
Shape shape_from_name(std::string_view name);

struct GenSpec {
    std::size_t atoms = 10;
    std::size_t rules = 20;
    std::size_t facts = 2;
    std::size_t max_body = 2;
    double strict_weight = 1;
    double defeasible_weight = 3;
    double defeater_weight = 1;
    /// Probability that an eligible pair of rules with complementary heads is ordered.
    double superiority_density = 0.2;
    Shape shape = Shape::Free;
    /// No facts and no empty-bodied strict rules; implied by Shape::FactDeficient.
    bool fact_deficient = false;
    std::uint64_t seed = 0;
};

class GenerationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Deterministic in the spec. Duplicate rules are never emitted, so a crowded spec may
/// yield fewer rules than requested.
Theory generate(const GenSpec& spec);

/// "atoms=50,rules=200,shape=hierarchical,seed=7"; unknown keys throw GenerationError.
GenSpec parse_gen_spec(std::string_view text);
std::string format_gen_spec(const GenSpec& spec);

/// Every theory over atoms {a, b} with at most three rules of body size <= 1, at most one
/// superiority pair (between rules with complementary heads), and no fact or one fact.
/// Returns the number of theories visited.
std::size_t for_each_small_theory(const std::function<void(const Theory&)>& visit);

}  // namespace defeasible::workbench
