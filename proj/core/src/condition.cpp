#include "defeasible/condition.hpp"

#include <array>

namespace defeasible::cond {

bool Condition::operator==(const Condition&) const = default;

namespace {

constexpr int kMaxVars = 4;

Condition leaf(NodeKind kind) {
    Condition c;
    c.kind = kind;
    return c;
}

Condition quantifier(NodeKind kind, int var, RuleScope scope, LitRef head, Condition body) {
    Condition c = leaf(kind);
    c.var = var;
    c.scope = scope;
    c.head = head;
    c.children.push_back(std::move(body));
    return c;
}

Condition body_quantifier(NodeKind kind, int lit_var, int rule_var, Condition body) {
    Condition c = leaf(kind);
    c.var = lit_var;
    c.rule_var = rule_var;
    c.children.push_back(std::move(body));
    return c;
}

}  // namespace

Condition truth(bool value) { return leaf(value ? NodeKind::True : NodeKind::False); }

Condition all_of(std::vector<Condition> children) {
    Condition c = leaf(NodeKind::And);
    c.children = std::move(children);
    return c;
}

Condition any_of(std::vector<Condition> children) {
    Condition c = leaf(NodeKind::Or);
    c.children = std::move(children);
    return c;
}

Condition exists_rule(int var, RuleScope scope, LitRef head, Condition body) {
    return quantifier(NodeKind::ExistsRule, var, scope, head, std::move(body));
}

Condition forall_rule(int var, RuleScope scope, LitRef head, Condition body) {
    return quantifier(NodeKind::ForAllRule, var, scope, head, std::move(body));
}

Condition exists_body(int lit_var, int rule_var, Condition body) {
    return body_quantifier(NodeKind::ExistsBody, lit_var, rule_var, std::move(body));
}

Condition forall_body(int lit_var, int rule_var, Condition body) {
    return body_quantifier(NodeKind::ForAllBody, lit_var, rule_var, std::move(body));
}

Condition proved(Sign sign, Tag tag, LitRef literal) {
    Condition c = leaf(NodeKind::Proved);
    c.sign = sign;
    c.tag = tag;
    c.literal = literal;
    return c;
}

Condition in_closure(Tag tag, LitRef literal, bool member) {
    Condition c = leaf(NodeKind::InClosure);
    c.tag = tag;
    c.literal = literal;
    c.holds = member;
    return c;
}

Condition is_fact(LitRef literal, bool member) {
    Condition c = leaf(NodeKind::IsFact);
    c.literal = literal;
    c.holds = member;
    return c;
}

Condition superior(int superior_var, int inferior_var, bool holds) {
    Condition c = leaf(NodeKind::Superior);
    c.var = superior_var;
    c.rule_var = inferior_var;
    c.holds = holds;
    return c;
}

// ---------------------------------------------------------------------------

namespace {

struct Scope {
    std::array<bool, kMaxVars> rules{};
    std::array<bool, kMaxVars> lits{};
};

void check(const Condition& c, Scope scope) {
    auto bad_var = [](int v) { return v < 0 || v >= kMaxVars; };
    auto check_lit = [&](LitRef ref) {
        if (ref.kind == LitRef::Kind::Var && (bad_var(ref.var) || !scope.lits[ref.var])) {
            throw MalformedCondition("unbound literal variable a" + std::to_string(ref.var));
        }
    };
    auto check_rule = [&](int v) {
        if (bad_var(v) || !scope.rules[v]) throw MalformedCondition("unbound rule variable r" + std::to_string(v));
    };
    switch (c.kind) {
        case NodeKind::True:
        case NodeKind::False:
            if (!c.children.empty()) throw MalformedCondition("constant with children");
            return;
        case NodeKind::And:
        case NodeKind::Or:
            if (c.children.empty()) throw MalformedCondition("empty connective");
            for (const auto& child : c.children) check(child, scope);
            return;
        case NodeKind::ExistsRule:
        case NodeKind::ForAllRule:
            if (c.children.size() != 1) throw MalformedCondition("rule quantifier needs one child");
            if (bad_var(c.var)) throw MalformedCondition("bad rule variable");
            if (c.head.kind == LitRef::Kind::Var) check_lit(c.head);
            scope.rules[c.var] = true;
            check(c.children[0], scope);
            return;
        case NodeKind::ExistsBody:
        case NodeKind::ForAllBody:
            if (c.children.size() != 1) throw MalformedCondition("body quantifier needs one child");
            if (bad_var(c.var)) throw MalformedCondition("bad literal variable");
            check_rule(c.rule_var);
            scope.lits[c.var] = true;
            check(c.children[0], scope);
            return;
        case NodeKind::Proved:
        case NodeKind::InClosure:
        case NodeKind::IsFact:
            if (!c.children.empty()) throw MalformedCondition("atom with children");
            check_lit(c.literal);
            return;
        case NodeKind::Superior:
            if (!c.children.empty()) throw MalformedCondition("atom with children");
            check_rule(c.var);
            check_rule(c.rule_var);
            return;
    }
    throw MalformedCondition("unknown node kind");
}

Condition dual(const Condition& c) {
    Condition out = c;
    out.children.clear();
    for (const auto& child : c.children) out.children.push_back(dual(child));
    switch (c.kind) {
        case NodeKind::True: out.kind = NodeKind::False; break;
        case NodeKind::False: out.kind = NodeKind::True; break;
        case NodeKind::And: out.kind = NodeKind::Or; break;
        case NodeKind::Or: out.kind = NodeKind::And; break;
        case NodeKind::ExistsRule: out.kind = NodeKind::ForAllRule; break;
        case NodeKind::ForAllRule: out.kind = NodeKind::ExistsRule; break;
        case NodeKind::ExistsBody: out.kind = NodeKind::ForAllBody; break;
        case NodeKind::ForAllBody: out.kind = NodeKind::ExistsBody; break;
        case NodeKind::Proved: out.sign = c.sign == Sign::Plus ? Sign::Minus : Sign::Plus; break;
        case NodeKind::InClosure:
        case NodeKind::IsFact:
        case NodeKind::Superior: out.holds = !c.holds; break;
    }
    return out;
}

}  // namespace

void check_well_formed(const Condition& c) { check(c, Scope{}); }

Condition strong_negation(const Condition& c) {
    check_well_formed(c);
    return dual(c);
}

// ---------------------------------------------------------------------------
// The +tag rules. Rule variables: 0 = r (supporting rule), 1 = s (attacker),
// 2 = t (team member). Literal variable i ranges over the body of rule i.

namespace {

constexpr int R = 0;
constexpr int S = 1;
constexpr int T = 2;

Condition body_all(int rule, Sign sign, Tag tag) { return forall_body(rule, rule, proved(sign, tag, LitRef::bound(rule))); }
Condition body_some(int rule, Sign sign, Tag tag) { return exists_body(rule, rule, proved(sign, tag, LitRef::bound(rule))); }

Condition delta_plus() {
    return any_of({is_fact(LitRef::q(), true),
                   exists_rule(R, RuleScope::Strict, LitRef::q(), body_all(R, Sign::Plus, Tag::Delta))});
}

Condition lambda_plus() {
    return any_of({in_closure(Tag::Delta, LitRef::q(), true),
                   all_of({exists_rule(R, RuleScope::StrictDefeasible, LitRef::q(), body_all(R, Sign::Plus, Tag::Lambda)),
                           in_closure(Tag::Delta, LitRef::not_q(), false)})});
}

// Attacker s is disposed of when some body literal lies outside P_lambda.
Condition attacker_not_lambda() {
    return exists_body(S, S, in_closure(Tag::Lambda, LitRef::bound(S), false));
}

Condition team_beats_attacker(Tag tag) {
    return exists_rule(T, RuleScope::StrictDefeasible, LitRef::q(),
                       all_of({body_all(T, Sign::Plus, tag), superior(T, S)}));
}

Condition partial_par_plus(Tag tag, bool team) {
    const Condition clause1 = in_closure(Tag::Delta, LitRef::q(), true);
    const Condition no_definite_complement = in_closure(Tag::Delta, LitRef::not_q(), false);
    if (team) {
        return any_of({clause1,
                       all_of({exists_rule(R, RuleScope::StrictDefeasible, LitRef::q(), body_all(R, Sign::Plus, tag)),
                               no_definite_complement,
                               forall_rule(S, RuleScope::All, LitRef::not_q(),
                                           any_of({attacker_not_lambda(), team_beats_attacker(tag)}))})});
    }
    return any_of({clause1,
                   exists_rule(R, RuleScope::StrictDefeasible, LitRef::q(),
                               all_of({body_all(R, Sign::Plus, tag), no_definite_complement,
                                       forall_rule(S, RuleScope::All, LitRef::not_q(),
                                                   any_of({attacker_not_lambda(), superior(R, S)}))}))});
}

// Shared shape of +∂, +∂*, +δ, +δ*. `attack_tag` is the tag whose −conclusions
// dispose of an attacker in (2.3.1).
Condition defeasible_plus(Tag tag, Tag attack_tag, bool team) {
    const Condition clause1 = proved(Sign::Plus, Tag::Delta, LitRef::q());
    const Condition no_definite_complement = proved(Sign::Minus, Tag::Delta, LitRef::not_q());
    const Condition attacker_out = body_some(S, Sign::Minus, attack_tag);
    if (team) {
        return any_of({clause1,
                       all_of({exists_rule(R, RuleScope::StrictDefeasible, LitRef::q(), body_all(R, Sign::Plus, tag)),
                               no_definite_complement,
                               forall_rule(S, RuleScope::All, LitRef::not_q(),
                                           any_of({attacker_out, team_beats_attacker(tag)}))})});
    }
    return any_of({clause1,
                   exists_rule(R, RuleScope::StrictDefeasible, LitRef::q(),
                               all_of({body_all(R, Sign::Plus, tag), no_definite_complement,
                                       forall_rule(S, RuleScope::All, LitRef::not_q(),
                                                   any_of({attacker_out, superior(R, S)}))}))});
}

Condition support_plus(Tag tag, Tag defeasible_tag) {
    return any_of({proved(Sign::Plus, Tag::Delta, LitRef::q()),
                   exists_rule(R, RuleScope::StrictDefeasible, LitRef::q(),
                               all_of({body_all(R, Sign::Plus, tag),
                                       forall_rule(S, RuleScope::All, LitRef::not_q(),
                                                   any_of({superior(S, R, false), body_some(S, Sign::Minus, defeasible_tag)}))}))});
}

Condition plus_rule(Tag tag) {
    switch (tag) {
        case Tag::Delta: return delta_plus();
        case Tag::Lambda: return lambda_plus();
        case Tag::PartialPar: return partial_par_plus(tag, true);
        case Tag::PartialParStar: return partial_par_plus(tag, false);
        case Tag::Partial: return defeasible_plus(tag, Tag::Partial, true);
        case Tag::PartialStar: return defeasible_plus(tag, Tag::PartialStar, false);
        case Tag::DeltaAp: return defeasible_plus(tag, Tag::Supp, true);
        case Tag::DeltaApStar: return defeasible_plus(tag, Tag::SuppStar, false);
        case Tag::Supp: return support_plus(tag, Tag::DeltaAp);
        case Tag::SuppStar: return support_plus(tag, Tag::DeltaApStar);
    }
    throw MalformedCondition("unknown tag");
}

}  // namespace

Condition inference_rule(Tag tag, Sign sign) {
    Condition plus = plus_rule(tag);
    return sign == Sign::Plus ? plus : strong_negation(plus);
}

// ---------------------------------------------------------------------------

namespace {

std::string lit_text(LitRef ref) {
    switch (ref.kind) {
        case LitRef::Kind::Q: return "q";
        case LitRef::Kind::NotQ: return "~q";
        case LitRef::Kind::Var: return "a" + std::to_string(ref.var);
    }
    return "?";
}

std::string scope_text(RuleScope scope) {
    switch (scope) {
        case RuleScope::All: return "R";
        case RuleScope::StrictDefeasible: return "R_sd";
        case RuleScope::Strict: return "R_s";
    }
    return "R";
}

}  // namespace

std::string to_string(const Condition& c) {
    auto join = [&](const char* op) {
        std::string out = "(";
        for (std::size_t i = 0; i < c.children.size(); ++i) {
            if (i) out += op;
            out += to_string(c.children[i]);
        }
        return out + ")";
    };
    auto rv = [](int v) { return "r" + std::to_string(v); };
    switch (c.kind) {
        case NodeKind::True: return "true";
        case NodeKind::False: return "false";
        case NodeKind::And: return join(" & ");
        case NodeKind::Or: return join(" | ");
        case NodeKind::ExistsRule:
            return "E " + rv(c.var) + " in " + scope_text(c.scope) + "[" + lit_text(c.head) + "]: " + to_string(c.children[0]);
        case NodeKind::ForAllRule:
            return "A " + rv(c.var) + " in " + scope_text(c.scope) + "[" + lit_text(c.head) + "]: " + to_string(c.children[0]);
        case NodeKind::ExistsBody:
            return "E a" + std::to_string(c.var) + " in A(" + rv(c.rule_var) + "): " + to_string(c.children[0]);
        case NodeKind::ForAllBody:
            return "A a" + std::to_string(c.var) + " in A(" + rv(c.rule_var) + "): " + to_string(c.children[0]);
        case NodeKind::Proved:
            return std::string(c.sign == Sign::Plus ? "+" : "-") + std::string(tag_name(c.tag)) + " " + lit_text(c.literal) + " in P";
        case NodeKind::InClosure:
            return "+" + std::string(tag_name(c.tag)) + " " + lit_text(c.literal) + (c.holds ? " in P_" : " notin P_") +
                   std::string(tag_name(c.tag));
        case NodeKind::IsFact: return lit_text(c.literal) + (c.holds ? " in F" : " notin F");
        case NodeKind::Superior:
            return std::string(c.holds ? "" : "not ") + rv(c.var) + " > " + rv(c.rule_var);
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Direct evaluation. Deliberately index-free: quantifiers scan the whole rule list,
// superiority and facts are looked up by linear scan.

namespace {

struct Env {
    std::array<RuleId, kMaxVars> rules{};
    std::array<Literal, kMaxVars> lits{};
};

class Evaluator {
public:
    Evaluator(const Theory& theory, Literal q, const ProofView& view) : theory_(theory), q_(q), view_(view) {}

    bool eval(const Condition& c, Env& env) const {
        switch (c.kind) {
            case NodeKind::True: return true;
            case NodeKind::False: return false;
            case NodeKind::And:
                for (const auto& child : c.children) {
                    if (!eval(child, env)) return false;
                }
                return true;
            case NodeKind::Or:
                for (const auto& child : c.children) {
                    if (eval(child, env)) return true;
                }
                return false;
            case NodeKind::ExistsRule:
            case NodeKind::ForAllRule: {
                const bool exists = c.kind == NodeKind::ExistsRule;
                const Literal head = resolve(c.head, env);
                const auto rules = theory_.rules();
                for (RuleId r = 0; r < rules.size(); ++r) {
                    if (rules[r].head != head || !in_scope(rules[r].kind, c.scope)) continue;
                    env.rules[c.var] = r;
                    if (eval(c.children[0], env) == exists) return exists;
                }
                return !exists;
            }
            case NodeKind::ExistsBody:
            case NodeKind::ForAllBody: {
                const bool exists = c.kind == NodeKind::ExistsBody;
                for (Literal a : theory_.rule(env.rules[c.rule_var]).body) {
                    env.lits[c.var] = a;
                    if (eval(c.children[0], env) == exists) return exists;
                }
                return !exists;
            }
            case NodeKind::Proved: return view_.proved(c.sign, c.tag, resolve(c.literal, env));
            case NodeKind::InClosure: return view_.in_closure(c.tag, resolve(c.literal, env)) == c.holds;
            case NodeKind::IsFact: {
                const Literal x = resolve(c.literal, env);
                bool member = false;
                for (Literal f : theory_.facts()) member = member || f == x;
                return member == c.holds;
            }
            case NodeKind::Superior: {
                const RuleId a = env.rules[c.var];
                const RuleId b = env.rules[c.rule_var];
                bool found = false;
                for (const auto& [sup, inf] : theory_.superiority()) found = found || (sup == a && inf == b);
                return found == c.holds;
            }
        }
        return false;
    }

private:
    Literal resolve(LitRef ref, const Env& env) const {
        switch (ref.kind) {
            case LitRef::Kind::Q: return q_;
            case LitRef::Kind::NotQ: return q_.complement();
            case LitRef::Kind::Var: return env.lits[ref.var];
        }
        return q_;
    }

    const Theory& theory_;
    Literal q_;
    const ProofView& view_;
};

}  // namespace

bool evaluate(const Condition& c, const Theory& theory, Literal q, const ProofView& view) {
    Env env;
    return Evaluator(theory, q, view).eval(c, env);
}

}  // namespace defeasible::cond
