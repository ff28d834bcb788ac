#pragma once

// Worklist fixpoint engine for the ten proof tags.
//
// Delta, lambda and the partial_par pair are staged: each stage reads the completed
// closures of the previous ones ("+x ∈ P_x"). partial / partial_star and the
// delta_ap families reference conclusions derived earlier in the same proof, so each
// family runs as one joint fixpoint (delta_ap jointly with its support tag).
//
// Undecided is implicit: a literal with neither sign at the fixpoint.

#include "defeasible/model.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <span>
#include <string_view>

namespace defeasible {

struct EngineOptions {
    /// When set, the worklist is processed in a pseudo-random order drawn from this seed.
    /// Results must not depend on it.
    std::optional<std::uint64_t> shuffle_seed;
};

/// Which family a tag belongs to and what it depends on.
struct LogicSpec {
    enum class Family { Definite, Potential, Staged, Joint };
    Tag tag;
    Family family;
    bool team_defeat;
    /// Auxiliary tags computed alongside (or before) this one.
    std::vector<Tag> auxiliary;
};

LogicSpec logic_spec(Tag tag);

ClosureSet delta_closure(const Theory& theory, const EngineOptions& options = {});

/// `delta` must contain a completed Delta closure.
ClosureSet lambda_closure(const Theory& theory, const ClosureSet& delta, const EngineOptions& options = {});

/// PartialPar with team defeat, PartialParStar without. Reads completed Delta and lambda.
ClosureSet partial_par_closure(const Theory& theory, const ClosureSet& delta, const ClosureSet& lambda, bool team_defeat,
                               const EngineOptions& options = {});

/// logic ∈ {Partial, PartialStar, DeltaAp, DeltaApStar}. Result holds the principal tag, Delta,
/// and for the delta_ap family the matching support tag.
ClosureSet conventional_closure(const Theory& theory, Tag logic, const EngineOptions& options = {});

/// As conventional_closure, but `seed` is injected as already-derived +tag conclusions.
/// tag ∈ {Partial, PartialStar, DeltaAp, DeltaApStar, Supp, SuppStar}. The caller guarantees
/// seed ⊆ C_tag; the result is then identical to the unseeded closure.
ClosureSet kickstart_closure(const Theory& theory, Tag tag, std::span<const Literal> seed,
                             const EngineOptions& options = {});

/// Closure for any tag, including whatever auxiliary tags were computed on the way.
ClosureSet compute_closure(const Theory& theory, Tag tag, const EngineOptions& options = {});

/// All ten tags.
ClosureSet compute_all(const Theory& theory, const EngineOptions& options = {});

class UnknownLiteral : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Answers queries against one theory, caching closures per tag. Thread-safe.
class Reasoner {
public:
    explicit Reasoner(const Theory& theory) : theory_(theory) {}

    Status query(Tag tag, Literal q);
    /// Throws UnknownLiteral when the atom does not occur in the theory.
    Status query(Tag tag, std::string_view literal);
    const ClosureSet& closure(Tag tag);

private:
    const Theory& theory_;
    std::mutex mutex_;
    std::map<Tag, ClosureSet> cache_;
};

}  // namespace defeasible
