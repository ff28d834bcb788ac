#pragma once

// Ground defeasible theories: atoms, literals, rules, superiority, and the
// tagged closure sets computed over them.

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace defeasible {

using AtomId = std::uint32_t;
using RuleId = std::uint32_t;

/// A signed atom. The id packs the atom and the sign bit: id = 2*atom + (negated ? 1 : 0),
/// so complement is a single xor and closures index flat arrays by id.
class Literal {
public:
    constexpr Literal() = default;
    constexpr Literal(AtomId atom, bool positive) : id_(2 * atom + (positive ? 0u : 1u)) {}

    static constexpr Literal from_id(std::uint32_t id) {
        Literal l;
        l.id_ = id;
        return l;
    }

    constexpr std::uint32_t id() const { return id_; }
    constexpr AtomId atom() const { return id_ >> 1; }
    constexpr bool positive() const { return (id_ & 1u) == 0; }
    constexpr Literal complement() const { return from_id(id_ ^ 1u); }

    constexpr auto operator<=>(const Literal&) const = default;

private:
    std::uint32_t id_ = 0;
};

constexpr Literal complement(Literal q) { return q.complement(); }

enum class RuleKind : std::uint8_t { Strict, Defeasible, Defeater };

/// Which rules take part: R, R_sd or R_s.
enum class RuleScope : std::uint8_t { All, StrictDefeasible, Strict };

constexpr bool in_scope(RuleKind kind, RuleScope scope) {
    switch (scope) {
        case RuleScope::All: return true;
        case RuleScope::StrictDefeasible: return kind != RuleKind::Defeater;
        case RuleScope::Strict: return kind == RuleKind::Strict;
    }
    return false;
}

struct Rule {
    std::string label;
    RuleKind kind = RuleKind::Defeasible;
    std::vector<Literal> body;  // duplicate-free, source order
    Literal head;
};

/// Proof tags. Delta is definite (monotonic) provability; DeltaAp / DeltaApStar are the
/// ambiguity-propagating delta and delta*; Supp / SuppStar their support tags.
enum class Tag : std::uint8_t {
    Delta,
    Lambda,
    PartialPar,
    PartialParStar,
    Partial,
    PartialStar,
    DeltaAp,
    DeltaApStar,
    Supp,
    SuppStar,
};

inline constexpr std::size_t kTagCount = 10;

inline constexpr std::array<Tag, kTagCount> kAllTags = {
    Tag::Delta,   Tag::Lambda,      Tag::PartialPar, Tag::PartialParStar, Tag::Partial,
    Tag::PartialStar, Tag::DeltaAp, Tag::DeltaApStar, Tag::Supp,          Tag::SuppStar,
};

constexpr std::size_t index_of(Tag t) { return static_cast<std::size_t>(t); }

/// Tag names used by the file formats and the CLI.
std::string_view tag_name(Tag t);
std::optional<Tag> tag_from_name(std::string_view name);

enum class Sign : std::uint8_t { Plus, Minus };
enum class Status : std::uint8_t { Undecided, Plus, Minus };

std::string_view status_name(Status s);

struct TaggedConclusion {
    Sign sign;
    Tag tag;
    Literal literal;

    auto operator<=>(const TaggedConclusion&) const = default;
};

struct Finding {
    enum class Kind { DuplicateLabel, UnknownLabel, SuperiorityCycle, UnknownAtom };
    Kind kind;
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> findings;
    bool ok() const { return findings.empty(); }
};

class Theory;

/// Thrown when freezing an invalid theory.
class TheoryError : public std::runtime_error {
public:
    explicit TheoryError(ValidationReport report);
    const ValidationReport& report() const { return report_; }

private:
    ValidationReport report_;
};

/// Mutable staging area for a theory. Superiority is expressed on labels and
/// checked only by validate()/freeze().
class TheoryBuilder {
public:
    AtomId intern_atom(std::string_view name);
    /// Parses "name" or "~name", interning the atom.
    Literal literal(std::string_view text);

    void add_fact(Literal q);
    void add_rule(std::string label, RuleKind kind, std::vector<Literal> body, Literal head);
    void add_superiority(std::string superior, std::string inferior);

    std::size_t atom_count() const { return atoms_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::vector<Literal>& facts() const { return facts_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<std::pair<std::string, std::string>>& superiority() const { return superiority_; }

    /// Throws TheoryError when validate() reports findings.
    Theory freeze() const;

private:
    friend class Theory;
    std::vector<std::string> atoms_;
    std::unordered_map<std::string, AtomId> atom_index_;
    std::vector<Literal> facts_;
    std::vector<Rule> rules_;
    std::vector<std::pair<std::string, std::string>> superiority_;
};

ValidationReport validate(const TheoryBuilder& builder);

/// An immutable, validated ground theory (F, R, >) with dense indexes.
class Theory {
public:
    Theory() = default;

    std::size_t atom_count() const { return atoms_.size(); }
    std::size_t literal_count() const { return 2 * atoms_.size(); }
    const std::string& atom_name(AtomId a) const { return atoms_.at(a); }
    std::string literal_name(Literal q) const;
    std::optional<Literal> find_literal(std::string_view text) const;

    std::span<const Literal> facts() const { return facts_; }
    bool is_fact(Literal q) const { return is_fact_[q.id()] != 0; }

    std::span<const Rule> rules() const { return rules_; }
    const Rule& rule(RuleId r) const { return rules_[r]; }
    std::optional<RuleId> find_rule(std::string_view label) const;

    std::span<const std::pair<RuleId, RuleId>> superiority() const { return superiority_; }
    /// a > b
    bool superior(RuleId a, RuleId b) const;
    /// Rules t with t > r.
    std::span<const RuleId> superiors_of(RuleId r) const { return beaten_by_[r]; }
    /// Rules s with r > s.
    std::span<const RuleId> inferiors_of(RuleId r) const { return beats_[r]; }

    /// R[q] in rule-index order.
    std::span<const RuleId> rules_with_head(Literal q) const { return by_head_[q.id()]; }
    /// Rules whose body contains q.
    std::span<const RuleId> rules_with_body(Literal q) const { return by_body_[q.id()]; }

    /// Builder holding the same content; used by transformations.
    TheoryBuilder to_builder() const;

private:
    friend class TheoryBuilder;

    std::vector<std::string> atoms_;
    std::unordered_map<std::string, AtomId> atom_index_;
    std::vector<Literal> facts_;
    std::vector<char> is_fact_;
    std::vector<Rule> rules_;
    std::unordered_map<std::string, RuleId> rule_index_;
    std::vector<std::pair<RuleId, RuleId>> superiority_;
    std::unordered_set<std::uint64_t> superior_set_;
    std::vector<std::vector<RuleId>> beats_;
    std::vector<std::vector<RuleId>> beaten_by_;
    std::vector<std::vector<RuleId>> by_head_;
    std::vector<std::vector<RuleId>> by_body_;
};

/// A frozen theory always validates; kept for symmetry with the builder overload.
ValidationReport validate(const Theory& theory);

/// R[q], R_sd[q] or R_s[q] in rule-index order.
std::vector<RuleId> rules_for(const Theory& theory, Literal q, RuleScope scope = RuleScope::All);

/// Two theories are equal iff their canonical serializations are byte-equal.
bool operator==(const Theory& a, const Theory& b);

class CoherenceError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Per-tag status of every literal. Tags that were not computed are absent.
class ClosureSet {
public:
    ClosureSet() = default;
    explicit ClosureSet(std::size_t literal_count) : literal_count_(literal_count) {}

    std::size_t literal_count() const { return literal_count_; }

    /// Installs a tag from plus/minus membership vectors; throws CoherenceError if a
    /// literal is in both.
    void set_tag(Tag tag, std::span<const char> plus, std::span<const char> minus);
    void set_tag(Tag tag, std::vector<Status> statuses);

    bool has(Tag tag) const { return present_[index_of(tag)]; }
    Status status(Tag tag, Literal q) const;
    std::span<const Status> statuses(Tag tag) const;
    std::vector<Tag> tags() const;

    std::vector<Literal> with_status(Tag tag, Status s) const;
    std::vector<Literal> positives(Tag tag) const { return with_status(tag, Status::Plus); }
    std::size_t count(Tag tag, Status s) const;

    /// Copies every tag of `other` into this set (same literal count required).
    void merge(const ClosureSet& other);
    /// Copies tag `from` of `other` in as tag `to`.
    void copy_tag(const ClosureSet& other, Tag from, Tag to);

    bool operator==(const ClosureSet& other) const;

private:
    std::size_t literal_count_ = 0;
    std::array<bool, kTagCount> present_{};
    std::array<std::vector<Status>, kTagCount> status_{};
};

}  // namespace defeasible

template <>
struct std::hash<defeasible::Literal> {
    std::size_t operator()(defeasible::Literal l) const noexcept { return l.id(); }
};
