#include "defeasible/engine.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>

namespace defeasible {

namespace {

/// Per-rule body counters and a literal worklist shared by every family.
/// Slot k holds one tag; pos_[k][r] counts body literals of r proved +tag,
/// neg_[k][r] those proved -tag.
class Fixpoint {
public:
    Fixpoint(const Theory& theory, int slots, const EngineOptions& options)
        : theory_(theory), slots_(slots), n_(theory.literal_count()) {
        for (int k = 0; k < slots_; ++k) {
            plus_[k].assign(n_, 0);
            minus_[k].assign(n_, 0);
            pos_[k].assign(theory.rules().size(), 0);
            neg_[k].assign(theory.rules().size(), 0);
        }
        queued_.assign(n_, 0);
        if (options.shuffle_seed) rng_.emplace(*options.shuffle_seed);
        std::vector<std::uint32_t> order(n_);
        std::iota(order.begin(), order.end(), 0u);
        if (rng_) std::shuffle(order.begin(), order.end(), *rng_);
        // Popped from the back, so reverse to start with literal 0 in the default order.
        std::reverse(order.begin(), order.end());
        for (auto id : order) enqueue(Literal::from_id(id));
    }

    bool ok(int k, RuleId r) const { return pos_[k][r] == theory_.rule(r).body.size(); }
    bool out(int k, RuleId r) const { return neg_[k][r] > 0; }
    bool plus(int k, Literal q) const { return plus_[k][q.id()] != 0; }
    bool minus(int k, Literal q) const { return minus_[k][q.id()] != 0; }

    void derive(int k, Sign sign, Literal q) {
        auto& mark = sign == Sign::Plus ? plus_[k] : minus_[k];
        if (mark[q.id()]) return;
        mark[q.id()] = 1;
        auto& counter = sign == Sign::Plus ? pos_[k] : neg_[k];
        for (RuleId r : theory_.rules_with_body(q)) {
            ++counter[r];
            const Literal h = theory_.rule(r).head;
            enqueue(h);
            enqueue(h.complement());
        }
    }

    template <class Eval>
    void run(Eval&& eval) {
        while (!work_.empty()) {
            std::size_t pick = work_.size() - 1;
            if (rng_) pick = std::uniform_int_distribution<std::size_t>(0, work_.size() - 1)(*rng_);
            std::swap(work_[pick], work_.back());
            const Literal q = Literal::from_id(work_.back());
            work_.pop_back();
            queued_[q.id()] = 0;
            eval(q);
        }
    }

    void export_slot(int k, Tag tag, ClosureSet& out) const { out.set_tag(tag, plus_[k], minus_[k]); }

private:
    void enqueue(Literal q) {
        if (queued_[q.id()]) return;
        queued_[q.id()] = 1;
        work_.push_back(q.id());
    }

    const Theory& theory_;
    int slots_;
    std::size_t n_;
    std::array<std::vector<char>, 2> plus_, minus_;
    std::array<std::vector<std::uint32_t>, 2> pos_, neg_;
    std::vector<std::uint32_t> work_;
    std::vector<char> queued_;
    std::optional<std::mt19937_64> rng_;
};

/// Completed closure lookups.
struct Completed {
    std::span<const Status> st;
    bool plus(Literal q) const { return st[q.id()] == Status::Plus; }
    bool minus(Literal q) const { return st[q.id()] == Status::Minus; }
};

template <class Pred>
bool any_rule(std::span<const RuleId> rules, Pred&& p) {
    return std::any_of(rules.begin(), rules.end(), p);
}

template <class Pred>
bool all_rules(std::span<const RuleId> rules, Pred&& p) {
    return std::all_of(rules.begin(), rules.end(), p);
}

bool supports(const Theory& t, RuleId r) { return t.rule(r).kind != RuleKind::Defeater; }

/// Some t ∈ R_sd[q] with t > s satisfies `applicable`.
template <class Pred>
bool team_beats(const Theory& t, RuleId s, Literal q, Pred&& applicable) {
    for (RuleId sup : t.superiors_of(s)) {
        if (t.rule(sup).head == q && supports(t, sup) && applicable(sup)) return true;
    }
    return false;
}

/// Every t ∈ R_sd[q] with t > s satisfies `discarded`.
template <class Pred>
bool team_fails(const Theory& t, RuleId s, Literal q, Pred&& discarded) {
    for (RuleId sup : t.superiors_of(s)) {
        if (t.rule(sup).head == q && supports(t, sup) && !discarded(sup)) return false;
    }
    return true;
}

std::vector<RuleId> supporting(const Theory& t, Literal q) { return rules_for(t, q, RuleScope::StrictDefeasible); }

/// Joint fixpoint for partial / partial_star / delta_ap / delta_ap_star (+ support).
/// Slot 0 is the principal tag, slot 1 the support tag when present.
ClosureSet run_joint(const Theory& theory, Tag logic, Tag seed_tag, std::span<const Literal> seed,
                     const EngineOptions& options) {
    const LogicSpec spec = logic_spec(logic);
    const bool team = spec.team_defeat;
    const bool ambiguity_propagating = logic == Tag::DeltaAp || logic == Tag::DeltaApStar;
    const int slots = ambiguity_propagating ? 2 : 1;
    const int attack = ambiguity_propagating ? 1 : 0;

    const ClosureSet delta = delta_closure(theory, options);
    const Completed d{delta.statuses(Tag::Delta)};

    Fixpoint fp(theory, slots, options);
    const int seed_slot = (seed_tag == Tag::Supp || seed_tag == Tag::SuppStar) ? 1 : 0;
    for (Literal q : seed) fp.derive(seed_slot, Sign::Plus, q);

    fp.run([&](Literal q) {
        const Literal nq = q.complement();
        const auto rq = supporting(theory, q);
        const auto attackers = theory.rules_with_head(nq);
        auto ok0 = [&](RuleId r) { return fp.ok(0, r); };
        auto out0 = [&](RuleId r) { return fp.out(0, r); };

        if (!fp.plus(0, q)) {
            bool derivable = d.plus(q);
            if (!derivable && d.minus(nq)) {
                if (team) {
                    derivable = any_rule(rq, ok0) && all_rules(attackers, [&](RuleId s) {
                                    return fp.out(attack, s) || team_beats(theory, s, q, ok0);
                                });
                } else {
                    derivable = any_rule(rq, [&](RuleId r) {
                        return fp.ok(0, r) && all_rules(attackers, [&](RuleId s) {
                                   return fp.out(attack, s) || theory.superior(r, s);
                               });
                    });
                }
            }
            if (derivable) fp.derive(0, Sign::Plus, q);
        }
        if (!fp.minus(0, q) && d.minus(q)) {
            bool refuted;
            if (team) {
                refuted = all_rules(rq, out0) || d.plus(nq) || any_rule(attackers, [&](RuleId s) {
                              return fp.ok(attack, s) && team_fails(theory, s, q, out0);
                          });
            } else {
                refuted = all_rules(rq, [&](RuleId r) {
                    return fp.out(0, r) || d.plus(nq) || any_rule(attackers, [&](RuleId s) {
                               return fp.ok(attack, s) && !theory.superior(r, s);
                           });
                });
            }
            if (refuted) fp.derive(0, Sign::Minus, q);
        }
        if (!ambiguity_propagating) return;

        // Support: some applicable rule not beaten by an attacker that is still alive.
        if (!fp.plus(1, q)) {
            bool supported = d.plus(q) || any_rule(rq, [&](RuleId r) {
                                 return fp.ok(1, r) && all_rules(attackers, [&](RuleId s) {
                                            return !theory.superior(s, r) || fp.out(0, s);
                                        });
                             });
            if (supported) fp.derive(1, Sign::Plus, q);
        }
        if (!fp.minus(1, q) && d.minus(q)) {
            bool unsupported = all_rules(rq, [&](RuleId r) {
                return fp.out(1, r) || any_rule(attackers, [&](RuleId s) {
                           return theory.superior(s, r) && fp.ok(0, s);
                       });
            });
            if (unsupported) fp.derive(1, Sign::Minus, q);
        }
    });

    ClosureSet out(theory.literal_count());
    out.copy_tag(delta, Tag::Delta, Tag::Delta);
    fp.export_slot(0, logic, out);
    if (ambiguity_propagating) fp.export_slot(1, spec.auxiliary.back(), out);
    return out;
}

}  // namespace

LogicSpec logic_spec(Tag tag) {
    using F = LogicSpec::Family;
    switch (tag) {
        case Tag::Delta: return {tag, F::Definite, false, {}};
        case Tag::Lambda: return {tag, F::Potential, false, {Tag::Delta}};
        case Tag::PartialPar: return {tag, F::Staged, true, {Tag::Delta, Tag::Lambda}};
        case Tag::PartialParStar: return {tag, F::Staged, false, {Tag::Delta, Tag::Lambda}};
        case Tag::Partial: return {tag, F::Joint, true, {Tag::Delta}};
        case Tag::PartialStar: return {tag, F::Joint, false, {Tag::Delta}};
        case Tag::DeltaAp: return {tag, F::Joint, true, {Tag::Delta, Tag::Supp}};
        case Tag::DeltaApStar: return {tag, F::Joint, false, {Tag::Delta, Tag::SuppStar}};
        case Tag::Supp: return {tag, F::Joint, true, {Tag::Delta, Tag::DeltaAp}};
        case Tag::SuppStar: return {tag, F::Joint, false, {Tag::Delta, Tag::DeltaApStar}};
    }
    throw std::invalid_argument("unknown tag");
}

ClosureSet delta_closure(const Theory& theory, const EngineOptions& options) {
    Fixpoint fp(theory, 1, options);
    fp.run([&](Literal q) {
        const auto strict = rules_for(theory, q, RuleScope::Strict);
        if (!fp.plus(0, q) && (theory.is_fact(q) || any_rule(strict, [&](RuleId r) { return fp.ok(0, r); }))) {
            fp.derive(0, Sign::Plus, q);
        }
        if (!fp.minus(0, q) && !theory.is_fact(q) && all_rules(strict, [&](RuleId r) { return fp.out(0, r); })) {
            fp.derive(0, Sign::Minus, q);
        }
    });
    ClosureSet out(theory.literal_count());
    fp.export_slot(0, Tag::Delta, out);
    return out;
}

ClosureSet lambda_closure(const Theory& theory, const ClosureSet& delta, const EngineOptions& options) {
    const Completed d{delta.statuses(Tag::Delta)};
    Fixpoint fp(theory, 1, options);
    fp.run([&](Literal q) {
        const auto rq = supporting(theory, q);
        const Literal nq = q.complement();
        if (!fp.plus(0, q) && (d.plus(q) || (!d.plus(nq) && any_rule(rq, [&](RuleId r) { return fp.ok(0, r); })))) {
            fp.derive(0, Sign::Plus, q);
        }
        if (!fp.minus(0, q) && !d.plus(q) && (d.plus(nq) || all_rules(rq, [&](RuleId r) { return fp.out(0, r); }))) {
            fp.derive(0, Sign::Minus, q);
        }
    });
    ClosureSet out(theory.literal_count());
    fp.export_slot(0, Tag::Lambda, out);
    return out;
}

ClosureSet partial_par_closure(const Theory& theory, const ClosureSet& delta, const ClosureSet& lambda, bool team_defeat,
                               const EngineOptions& options) {
    const Completed d{delta.statuses(Tag::Delta)};
    const Completed lam{lambda.statuses(Tag::Lambda)};

    // An attacker is live for (2.3.1) iff its whole body lies in P_lambda.
    std::vector<char> body_in_lambda(theory.rules().size(), 0);
    for (RuleId r = 0; r < theory.rules().size(); ++r) {
        const auto& body = theory.rule(r).body;
        body_in_lambda[r] = std::all_of(body.begin(), body.end(), [&](Literal a) { return lam.plus(a); });
    }

    Fixpoint fp(theory, 1, options);
    fp.run([&](Literal q) {
        const Literal nq = q.complement();
        const auto rq = supporting(theory, q);
        const auto attackers = theory.rules_with_head(nq);
        auto ok = [&](RuleId r) { return fp.ok(0, r); };
        auto out = [&](RuleId r) { return fp.out(0, r); };

        if (!fp.plus(0, q)) {
            bool derivable = d.plus(q);
            if (!derivable && !d.plus(nq)) {
                if (team_defeat) {
                    derivable = any_rule(rq, ok) && all_rules(attackers, [&](RuleId s) {
                                    return !body_in_lambda[s] || team_beats(theory, s, q, ok);
                                });
                } else {
                    derivable = any_rule(rq, [&](RuleId r) {
                        return ok(r) && all_rules(attackers, [&](RuleId s) {
                                   return !body_in_lambda[s] || theory.superior(r, s);
                               });
                    });
                }
            }
            if (derivable) fp.derive(0, Sign::Plus, q);
        }
        if (!fp.minus(0, q) && !d.plus(q)) {
            bool refuted;
            if (team_defeat) {
                refuted = all_rules(rq, out) || d.plus(nq) || any_rule(attackers, [&](RuleId s) {
                              return body_in_lambda[s] && team_fails(theory, s, q, out);
                          });
            } else {
                refuted = all_rules(rq, [&](RuleId r) {
                    return out(r) || d.plus(nq) || any_rule(attackers, [&](RuleId s) {
                               return body_in_lambda[s] && !theory.superior(r, s);
                           });
                });
            }
            if (refuted) fp.derive(0, Sign::Minus, q);
        }
    });
    ClosureSet out(theory.literal_count());
    fp.export_slot(0, team_defeat ? Tag::PartialPar : Tag::PartialParStar, out);
    return out;
}

ClosureSet conventional_closure(const Theory& theory, Tag logic, const EngineOptions& options) {
    if (logic != Tag::Partial && logic != Tag::PartialStar && logic != Tag::DeltaAp && logic != Tag::DeltaApStar) {
        throw std::invalid_argument("conventional_closure: not a conventional logic: " + std::string(tag_name(logic)));
    }
    return run_joint(theory, logic, logic, {}, options);
}

ClosureSet kickstart_closure(const Theory& theory, Tag tag, std::span<const Literal> seed, const EngineOptions& options) {
    Tag logic = tag;
    if (tag == Tag::Supp) logic = Tag::DeltaAp;
    if (tag == Tag::SuppStar) logic = Tag::DeltaApStar;
    if (logic != Tag::Partial && logic != Tag::PartialStar && logic != Tag::DeltaAp && logic != Tag::DeltaApStar) {
        throw std::invalid_argument("kickstart_closure: unsupported tag " + std::string(tag_name(tag)));
    }
    return run_joint(theory, logic, tag, seed, options);
}

ClosureSet compute_closure(const Theory& theory, Tag tag, const EngineOptions& options) {
    switch (tag) {
        case Tag::Delta: return delta_closure(theory, options);
        case Tag::Lambda: {
            ClosureSet out = delta_closure(theory, options);
            out.merge(lambda_closure(theory, out, options));
            return out;
        }
        case Tag::PartialPar:
        case Tag::PartialParStar: {
            ClosureSet out = delta_closure(theory, options);
            out.merge(lambda_closure(theory, out, options));
            out.merge(partial_par_closure(theory, out, out, tag == Tag::PartialPar, options));
            return out;
        }
        case Tag::Partial:
        case Tag::PartialStar:
        case Tag::DeltaAp:
        case Tag::DeltaApStar: return conventional_closure(theory, tag, options);
        case Tag::Supp: return conventional_closure(theory, Tag::DeltaAp, options);
        case Tag::SuppStar: return conventional_closure(theory, Tag::DeltaApStar, options);
    }
    throw std::invalid_argument("unknown tag");
}

ClosureSet compute_all(const Theory& theory, const EngineOptions& options) {
    ClosureSet out = delta_closure(theory, options);
    out.merge(lambda_closure(theory, out, options));
    out.merge(partial_par_closure(theory, out, out, true, options));
    out.merge(partial_par_closure(theory, out, out, false, options));
    for (Tag logic : {Tag::Partial, Tag::PartialStar, Tag::DeltaAp, Tag::DeltaApStar}) {
        ClosureSet joint = run_joint(theory, logic, logic, {}, options);
        for (Tag t : joint.tags()) {
            if (t != Tag::Delta) out.copy_tag(joint, t, t);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

const ClosureSet& Reasoner::closure(Tag tag) {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(tag);
    if (it == cache_.end()) it = cache_.emplace(tag, compute_closure(theory_, tag)).first;
    return it->second;
}

Status Reasoner::query(Tag tag, Literal q) { return closure(tag).status(tag, q); }

Status Reasoner::query(Tag tag, std::string_view literal) {
    auto q = theory_.find_literal(literal);
    if (!q) throw UnknownLiteral("unknown literal '" + std::string(literal) + "'");
    return query(tag, *q);
}

}  // namespace defeasible
