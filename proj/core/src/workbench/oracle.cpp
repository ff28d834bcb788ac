#include "defeasible/workbench/oracle.hpp"

#include "defeasible/condition.hpp"

namespace defeasible::workbench {

namespace {

struct Conclusion {
    Sign sign;
    Tag tag;
    std::uint32_t literal;
};

/// Which conclusions the proof contains, as a flat (sign, tag, literal) table.
class Proof {
public:
    explicit Proof(std::size_t literals) : literals_(literals), bits_(2 * kTagCount * literals, 0) {}
    bool contains(const Conclusion& c) const { return bits_[slot(c)] != 0; }
    void insert(const Conclusion& c) { bits_[slot(c)] = 1; }

private:
    std::size_t slot(const Conclusion& c) const {
        return ((c.sign == Sign::Plus ? 0 : kTagCount) + index_of(c.tag)) * literals_ + c.literal;
    }
    std::size_t literals_;
    std::vector<char> bits_;
};

/// The +/- inference-rule trees, built once.
const cond::Condition& rule_tree(Tag tag, Sign sign) {
    static const auto trees = [] {
        std::vector<cond::Condition> out;
        for (Tag t : kAllTags) {
            out.push_back(cond::inference_rule(t, Sign::Plus));
            out.push_back(cond::inference_rule(t, Sign::Minus));
        }
        return out;
    }();
    return trees[2 * index_of(tag) + (sign == Sign::Plus ? 0 : 1)];
}

/// Runs the given tags to a joint fixpoint, adding to `proof`.
void saturate(const Theory& theory, Proof& proof, std::initializer_list<Tag> tags) {
    std::vector<std::pair<Conclusion, const cond::Condition*>> rules;
    for (Tag tag : tags) {
        for (Sign sign : {Sign::Plus, Sign::Minus}) {
            const auto* condition = &rule_tree(tag, sign);
            for (std::uint32_t id = 0; id < theory.literal_count(); ++id) rules.push_back({{sign, tag, id}, condition});
        }
    }
    const cond::ProofView view{
        [&](Sign s, Tag t, Literal q) { return proof.contains({s, t, q.id()}); },
        [&](Tag t, Literal q) { return proof.contains({Sign::Plus, t, q.id()}); },
    };
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [conclusion, condition] : rules) {
            if (proof.contains(conclusion)) continue;
            if (cond::evaluate(*condition, theory, Literal::from_id(conclusion.literal), view)) {
                proof.insert(conclusion);
                changed = true;
            }
        }
    }
}

ClosureSet to_closure(const Theory& theory, const Proof& proof, std::initializer_list<Tag> tags) {
    ClosureSet out(theory.literal_count());
    for (Tag tag : tags) {
        std::vector<Status> st(theory.literal_count(), Status::Undecided);
        for (std::uint32_t id = 0; id < theory.literal_count(); ++id) {
            const bool plus = proof.contains({Sign::Plus, tag, id});
            const bool minus = proof.contains({Sign::Minus, tag, id});
            if (plus && minus) throw CoherenceError("oracle derived both signs");
            st[id] = plus ? Status::Plus : minus ? Status::Minus : Status::Undecided;
        }
        out.set_tag(tag, std::move(st));
    }
    return out;
}

}  // namespace

ClosureSet oracle_all(const Theory& theory) {
    Proof proof(theory.literal_count());
    saturate(theory, proof, {Tag::Delta});
    saturate(theory, proof, {Tag::Lambda});
    saturate(theory, proof, {Tag::PartialPar, Tag::PartialParStar});
    saturate(theory, proof, {Tag::Partial, Tag::PartialStar, Tag::DeltaAp, Tag::DeltaApStar, Tag::Supp, Tag::SuppStar});
    return to_closure(theory, proof,
                      {Tag::Delta, Tag::Lambda, Tag::PartialPar, Tag::PartialParStar, Tag::Partial, Tag::PartialStar,
                       Tag::DeltaAp, Tag::DeltaApStar, Tag::Supp, Tag::SuppStar});
}

ClosureSet oracle_closure(const Theory& theory, Tag tag) {
    Proof proof(theory.literal_count());
    saturate(theory, proof, {Tag::Delta});
    switch (tag) {
        case Tag::Delta: break;
        case Tag::Lambda: saturate(theory, proof, {Tag::Lambda}); break;
        case Tag::PartialPar:
        case Tag::PartialParStar:
            saturate(theory, proof, {Tag::Lambda});
            saturate(theory, proof, {tag});
            break;
        case Tag::Partial:
        case Tag::PartialStar: saturate(theory, proof, {tag}); break;
        case Tag::DeltaAp:
        case Tag::Supp: saturate(theory, proof, {Tag::DeltaAp, Tag::Supp}); break;
        case Tag::DeltaApStar:
        case Tag::SuppStar: saturate(theory, proof, {Tag::DeltaApStar, Tag::SuppStar}); break;
    }
    return to_closure(theory, proof, {tag});
}

}  // namespace defeasible::workbench
