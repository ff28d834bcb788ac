#pragma once

// Inference-rule conditions as syntax trees. Every +tag rule is written once as a
// tree; the matching -tag rule is its strong negation. The trees are evaluated
// directly by the reference evaluator (see workbench/oracle.hpp), which keeps that
// evaluator independent from the hand-written worklist engine.

#include "defeasible/model.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace defeasible::cond {

/// Where a literal in a condition comes from: the conclusion literal q, its
/// complement, or a body-literal variable bound by a quantifier.
struct LitRef {
    enum class Kind : std::uint8_t { Q, NotQ, Var };
    Kind kind = Kind::Q;
    int var = -1;

    static LitRef q() { return {Kind::Q, -1}; }
    static LitRef not_q() { return {Kind::NotQ, -1}; }
    static LitRef bound(int v) { return {Kind::Var, v}; }

    bool operator==(const LitRef&) const = default;
};

enum class NodeKind : std::uint8_t {
    True,
    False,
    And,
    Or,
    ExistsRule,  // ∃ r ∈ scope[head]
    ForAllRule,  // ∀ r ∈ scope[head]
    ExistsBody,  // ∃ a ∈ A(r)
    ForAllBody,  // ∀ a ∈ A(r)
    Proved,      // ±tag x ∈ P (derived earlier in the proof)
    InClosure,   // +tag x ∈ P_tag, or ∉ when member is false (completed closure)
    IsFact,      // x ∈ F, or ∉
    Superior,    // r > s, or ¬(r > s)
};

struct Condition {
    NodeKind kind = NodeKind::True;
    std::vector<Condition> children;
    // Rule quantifiers: bound variable, rule scope, and head literal.
    int var = -1;
    RuleScope scope = RuleScope::All;
    LitRef head;
    // Body quantifiers: rule variable whose body is ranged over (var is the literal variable).
    int rule_var = -1;
    // Proved / InClosure / IsFact.
    Sign sign = Sign::Plus;
    Tag tag = Tag::Delta;
    LitRef literal;
    // InClosure / IsFact / Superior: membership (true) or non-membership (false).
    bool holds = true;
    // Superior: var > rule_var when holds.

    bool operator==(const Condition&) const;
};

// Builders.
Condition truth(bool value);
Condition all_of(std::vector<Condition> children);
Condition any_of(std::vector<Condition> children);
Condition exists_rule(int var, RuleScope scope, LitRef head, Condition body);
Condition forall_rule(int var, RuleScope scope, LitRef head, Condition body);
Condition exists_body(int lit_var, int rule_var, Condition body);
Condition forall_body(int lit_var, int rule_var, Condition body);
Condition proved(Sign sign, Tag tag, LitRef literal);
Condition in_closure(Tag tag, LitRef literal, bool member);
Condition is_fact(LitRef literal, bool member);
/// superior > inferior, or its negation when holds is false.
Condition superior(int superior_var, int inferior_var, bool holds = true);

class MalformedCondition : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Throws MalformedCondition on unbound variables, empty connectives, or wrong arity.
void check_well_formed(const Condition& c);

/// Dual tree: ∃↔∀, ∧↔∨, +x∈P ↔ −x∈P, ∈↔∉ for completed closures and facts,
/// r>s ↔ ¬(r>s), true↔false.
Condition strong_negation(const Condition& c);

/// The +tag (sign Plus) or −tag (sign Minus, via strong_negation) inference rule.
Condition inference_rule(Tag tag, Sign sign);

std::string to_string(const Condition& c);

/// What a condition may ask about the current proof.
struct ProofView {
    std::function<bool(Sign, Tag, Literal)> proved;
    std::function<bool(Tag, Literal)> in_closure;
};

/// Evaluates `c` for conclusion literal q by scanning the theory's rule list.
bool evaluate(const Condition& c, const Theory& theory, Literal q, const ProofView& view);

}  // namespace defeasible::cond
