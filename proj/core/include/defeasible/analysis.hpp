#pragma once

// Structural analysis of ground theories: dependency graphs, loops, layer maps,
// conflicts, decisiveness certificates, simplification, and the regime classifier
// that says when partial_par may stand in for a conventional logic.

#include "defeasible/model.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace defeasible {

/// Edges run head → body literal for every in-scope rule. In merged mode nodes are
/// atoms (q and ~q identified), otherwise literal ids.
struct DependencyGraph {
    RuleScope scope = RuleScope::All;
    bool merged = false;
    std::vector<std::vector<std::uint32_t>> successors;

    std::size_t node_count() const { return successors.size(); }
    bool has_edge(std::uint32_t from, std::uint32_t to) const;
};

DependencyGraph dependency_graph(const Theory& theory, RuleScope scope, bool merged);

/// Strongly connected components (Tarjan, iterative). Components come out in reverse
/// topological order: every edge leaves a component for one listed no later.
std::vector<std::vector<std::uint32_t>> strongly_connected_components(const DependencyGraph& graph);

/// Nodes lying on a cycle: in a component of size > 1 or carrying a self-edge.
std::vector<char> cyclic_nodes(const DependencyGraph& graph);

/// Longest-path layering from the sinks up; nullopt when the graph has a cycle.
/// Every edge (u, v) satisfies layer[u] > layer[v].
std::optional<std::vector<std::uint32_t>> layer_map(const DependencyGraph& graph);

/// True iff layers[head] > layers[b] for every in-scope rule and body literal b.
bool layer_map_admissible(const Theory& theory, const std::vector<std::uint32_t>& layers, RuleScope scope, bool merged);

struct LoopReport {
    /// q such that q or ~q depends on q or ~q.
    std::vector<Literal> looping;
    /// Literals that depend on themselves.
    std::vector<Literal> self_loops;
    /// Literals that depend on themselves through strict rules only.
    std::vector<Literal> strict_loops;
    /// Literals that depend on themselves through strict and defeasible rules.
    std::vector<Literal> sd_loops;
};

LoopReport detect_loops(const Theory& theory);

/// q with a rule (or fact) for q and a rule (or fact) for ~q. Closed under complement.
std::vector<Literal> conflicted_literals(const Theory& theory);

struct StructureReport {
    bool hierarchical = false;
    bool semi_hierarchical = false;
    bool strict_semi_hierarchical = false;
    bool sd_semi_hierarchical = false;
    bool fact_deficient = false;
    bool empty_superiority = false;
    LoopReport loops;
    std::vector<Literal> conflicted;
    /// Per atom, when hierarchical.
    std::optional<std::vector<std::uint32_t>> atom_layers;
    /// Per literal, when semi-hierarchical.
    std::optional<std::vector<std::uint32_t>> literal_layers;
};

StructureReport classify_structure(const Theory& theory);

bool is_fact_deficient(const Theory& theory);

// ---------------------------------------------------------------------------
// Decisiveness

enum class CertStatus { CertifiedSyntactic, CertifiedSemantic, Unknown };

std::string_view cert_status_name(CertStatus s);

struct DecisivenessCertificate {
    Tag tag = Tag::Delta;
    CertStatus status = CertStatus::Unknown;
    /// Structural condition used, or "closure" for the semantic check.
    std::string basis;
    /// Undecided literals found by a failed semantic check.
    std::vector<Literal> witnesses;

    bool certified() const { return status != CertStatus::Unknown; }
};

DecisivenessCertificate certify_decisiveness(const Theory& theory, Tag tag, bool allow_semantic = true);

/// For each Delta-undecided p, checks that -Delta ~p, +partial p, -partial ~p and +lambda p
/// are all present. `closures` must hold Delta, lambda and partial. Returns one message
/// per missing conclusion.
std::vector<std::string> check_undecided_lemma(const Theory& theory, const ClosureSet& closures);

// ---------------------------------------------------------------------------
// Simplification

/// Repeatedly (a) for p ∈ F deletes the rules for p and the non-strict rules for ~p, and
/// (b) for p ∉ F without rules deletes every rule with p in its body. Superiority pairs
/// touching deleted rules are dropped. Atom ids are unchanged.
Theory simplify(const Theory& theory);

// ---------------------------------------------------------------------------
// Regimes

enum class Regime { ExactSubstitution, ExactEquality, UnderApprox, OverApprox, None };

std::string_view regime_name(Regime r);

struct Precondition {
    enum class Kind {
        Hierarchical,
        FactDeficient,
        EmptySuperiority,
        Decisive,
        NoConflictOnConflict,
        NoConflictOnLoop,
    };
    Kind kind;
    /// For Decisive.
    Tag tag = Tag::Delta;
    /// How it was established: syntactic for structural facts, or the decisiveness certificate status.
    CertStatus status = CertStatus::CertifiedSyntactic;

    std::string describe() const;
};

struct RegimeCertificate {
    Tag target = Tag::Partial;
    /// PartialPar or PartialParStar: the logic whose closure approximates the target.
    Tag via = Tag::PartialPar;
    Regime regime = Regime::None;
    std::string basis;
    std::vector<Precondition> preconditions;
};

/// target ∈ {Partial, PartialStar, DeltaAp, DeltaApStar, Supp, SuppStar}.
RegimeCertificate classify_regime(const Theory& theory, Tag target);

/// Re-checks every listed precondition from scratch. An empty list verifies only for None.
bool reverify(const Theory& theory, const RegimeCertificate& certificate);

/// Whether one precondition holds on `theory`.
bool precondition_holds(const Theory& theory, const Precondition& p);

nlohmann::json to_json(const Theory& theory, const StructureReport& report);
nlohmann::json to_json(const Theory& theory, const DecisivenessCertificate& certificate);
nlohmann::json to_json(const RegimeCertificate& certificate);

}  // namespace defeasible
