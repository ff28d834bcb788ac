#include "defeasible/model.hpp"

#include "defeasible/theory_io.hpp"

#include <algorithm>
#include <cassert>

namespace defeasible {

namespace {

constexpr std::array<std::string_view, kTagCount> kTagNames = {
    "delta",   "lambda",       "partial_par", "partial_par_star", "partial",
    "partial_star", "delta_ap", "delta_ap_star", "supp",          "supp_star",
};

std::uint64_t pair_key(RuleId a, RuleId b) { return (std::uint64_t{a} << 32) | b; }

}  // namespace

std::string_view tag_name(Tag t) { return kTagNames[index_of(t)]; }

std::optional<Tag> tag_from_name(std::string_view name) {
    for (Tag t : kAllTags) {
        if (tag_name(t) == name) return t;
    }
    return std::nullopt;
}

std::string_view status_name(Status s) {
    switch (s) {
        case Status::Plus: return "plus";
        case Status::Minus: return "minus";
        case Status::Undecided: return "undecided";
    }
    return "undecided";
}

TheoryError::TheoryError(ValidationReport report)
    : std::runtime_error([&] {
          std::string msg = "invalid theory:";
          for (const auto& f : report.findings) msg += "\n  " + f.message;
          return msg;
      }()),
      report_(std::move(report)) {}

// ---------------------------------------------------------------------------
// TheoryBuilder

AtomId TheoryBuilder::intern_atom(std::string_view name) {
    auto it = atom_index_.find(std::string(name));
    if (it != atom_index_.end()) return it->second;
    auto id = static_cast<AtomId>(atoms_.size());
    atoms_.emplace_back(name);
    atom_index_.emplace(atoms_.back(), id);
    return id;
}

Literal TheoryBuilder::literal(std::string_view text) {
    bool positive = true;
    if (!text.empty() && text.front() == '~') {
        positive = false;
        text.remove_prefix(1);
    }
    return Literal(intern_atom(text), positive);
}

void TheoryBuilder::add_fact(Literal q) {
    if (std::find(facts_.begin(), facts_.end(), q) == facts_.end()) facts_.push_back(q);
}

void TheoryBuilder::add_rule(std::string label, RuleKind kind, std::vector<Literal> body, Literal head) {
    std::vector<Literal> unique;
    unique.reserve(body.size());
    for (Literal a : body) {
        if (std::find(unique.begin(), unique.end(), a) == unique.end()) unique.push_back(a);
    }
    rules_.push_back(Rule{std::move(label), kind, std::move(unique), head});
}

void TheoryBuilder::add_superiority(std::string superior, std::string inferior) {
    std::pair<std::string, std::string> edge{std::move(superior), std::move(inferior)};
    if (std::find(superiority_.begin(), superiority_.end(), edge) == superiority_.end()) {
        superiority_.push_back(std::move(edge));
    }
}

ValidationReport validate(const TheoryBuilder& builder) {
    ValidationReport report;
    const auto& rules = builder.rules();
    std::unordered_map<std::string, RuleId> index;
    for (RuleId r = 0; r < rules.size(); ++r) {
        if (!index.emplace(rules[r].label, r).second) {
            report.findings.push_back({Finding::Kind::DuplicateLabel, "duplicate rule label '" + rules[r].label + "'"});
        }
    }

    auto check_literal = [&](Literal q, const std::string& where) {
        if (q.atom() >= builder.atom_count()) {
            report.findings.push_back({Finding::Kind::UnknownAtom, where + " references unknown atom #" + std::to_string(q.atom())});
        }
    };
    for (Literal f : builder.facts()) check_literal(f, "fact");
    for (const Rule& r : rules) {
        check_literal(r.head, "rule '" + r.label + "'");
        for (Literal a : r.body) check_literal(a, "rule '" + r.label + "'");
    }

    std::vector<std::vector<RuleId>> beats(rules.size());
    for (const auto& [sup, inf] : builder.superiority()) {
        auto a = index.find(sup);
        auto b = index.find(inf);
        if (a == index.end()) {
            report.findings.push_back({Finding::Kind::UnknownLabel, "superiority names undefined rule '" + sup + "'"});
        }
        if (b == index.end()) {
            report.findings.push_back({Finding::Kind::UnknownLabel, "superiority names undefined rule '" + inf + "'"});
        }
        if (a != index.end() && b != index.end()) beats[a->second].push_back(b->second);
    }

    // Iterative DFS; every back edge closes a cycle.
    enum : char { White, Grey, Black };
    std::vector<char> colour(rules.size(), White);
    std::vector<RuleId> path;
    for (RuleId root = 0; root < rules.size(); ++root) {
        if (colour[root] != White) continue;
        std::vector<std::pair<RuleId, std::size_t>> stack{{root, 0}};
        colour[root] = Grey;
        path.assign(1, root);
        while (!stack.empty()) {
            auto& [node, next] = stack.back();
            if (next < beats[node].size()) {
                RuleId succ = beats[node][next++];
                if (colour[succ] == Grey) {
                    auto from = std::find(path.begin(), path.end(), succ);
                    std::string msg = "superiority cycle:";
                    for (auto it = from; it != path.end(); ++it) msg += " " + rules[*it].label + " >";
                    msg += " " + rules[succ].label;
                    report.findings.push_back({Finding::Kind::SuperiorityCycle, std::move(msg)});
                } else if (colour[succ] == White) {
                    colour[succ] = Grey;
                    path.push_back(succ);
                    stack.emplace_back(succ, 0);
                }
            } else {
                colour[node] = Black;
                path.pop_back();
                stack.pop_back();
            }
        }
    }
    return report;
}

Theory TheoryBuilder::freeze() const {
    ValidationReport report = validate(*this);
    if (!report.ok()) throw TheoryError(std::move(report));

    Theory t;
    t.atoms_ = atoms_;
    t.atom_index_ = atom_index_;
    t.facts_ = facts_;
    t.is_fact_.assign(2 * atoms_.size(), 0);
    for (Literal f : facts_) t.is_fact_[f.id()] = 1;
    t.rules_ = rules_;
    t.by_head_.resize(2 * atoms_.size());
    t.by_body_.resize(2 * atoms_.size());
    for (RuleId r = 0; r < rules_.size(); ++r) {
        t.rule_index_.emplace(rules_[r].label, r);
        t.by_head_[rules_[r].head.id()].push_back(r);
        for (Literal a : rules_[r].body) t.by_body_[a.id()].push_back(r);
    }
    t.beats_.resize(rules_.size());
    t.beaten_by_.resize(rules_.size());
    for (const auto& [sup, inf] : superiority_) {
        RuleId a = t.rule_index_.at(sup);
        RuleId b = t.rule_index_.at(inf);
        t.superiority_.emplace_back(a, b);
        t.superior_set_.insert(pair_key(a, b));
        t.beats_[a].push_back(b);
        t.beaten_by_[b].push_back(a);
    }
    return t;
}

// ---------------------------------------------------------------------------
// Theory

std::string Theory::literal_name(Literal q) const {
    return q.positive() ? atoms_.at(q.atom()) : "~" + atoms_.at(q.atom());
}

std::optional<Literal> Theory::find_literal(std::string_view text) const {
    bool positive = true;
    if (!text.empty() && text.front() == '~') {
        positive = false;
        text.remove_prefix(1);
    }
    auto it = atom_index_.find(std::string(text));
    if (it == atom_index_.end()) return std::nullopt;
    return Literal(it->second, positive);
}

std::optional<RuleId> Theory::find_rule(std::string_view label) const {
    auto it = rule_index_.find(std::string(label));
    if (it == rule_index_.end()) return std::nullopt;
    return it->second;
}

bool Theory::superior(RuleId a, RuleId b) const { return superior_set_.count(pair_key(a, b)) != 0; }

TheoryBuilder Theory::to_builder() const {
    TheoryBuilder b;
    b.atoms_ = atoms_;
    b.atom_index_ = atom_index_;
    b.facts_ = facts_;
    b.rules_ = rules_;
    for (const auto& [sup, inf] : superiority_) b.superiority_.emplace_back(rules_[sup].label, rules_[inf].label);
    return b;
}

ValidationReport validate(const Theory& theory) { return validate(theory.to_builder()); }

std::vector<RuleId> rules_for(const Theory& theory, Literal q, RuleScope scope) {
    std::vector<RuleId> out;
    for (RuleId r : theory.rules_with_head(q)) {
        if (in_scope(theory.rule(r).kind, scope)) out.push_back(r);
    }
    return out;
}

bool operator==(const Theory& a, const Theory& b) { return serialize_theory(a) == serialize_theory(b); }

// ---------------------------------------------------------------------------
// ClosureSet

void ClosureSet::set_tag(Tag tag, std::span<const char> plus, std::span<const char> minus) {
    assert(plus.size() == literal_count_ && minus.size() == literal_count_);
    std::vector<Status> statuses(literal_count_, Status::Undecided);
    for (std::size_t i = 0; i < literal_count_; ++i) {
        if (plus[i] && minus[i]) {
            throw CoherenceError("incoherent closure: literal #" + std::to_string(i) + " is both +" +
                                 std::string(tag_name(tag)) + " and -" + std::string(tag_name(tag)));
        }
        if (plus[i]) statuses[i] = Status::Plus;
        if (minus[i]) statuses[i] = Status::Minus;
    }
    set_tag(tag, std::move(statuses));
}

void ClosureSet::set_tag(Tag tag, std::vector<Status> statuses) {
    if (statuses.size() != literal_count_) throw std::invalid_argument("closure size mismatch");
    present_[index_of(tag)] = true;
    status_[index_of(tag)] = std::move(statuses);
}

Status ClosureSet::status(Tag tag, Literal q) const {
    if (!has(tag)) throw std::out_of_range("closure has no tag " + std::string(tag_name(tag)));
    return status_[index_of(tag)].at(q.id());
}

std::span<const Status> ClosureSet::statuses(Tag tag) const {
    if (!has(tag)) throw std::out_of_range("closure has no tag " + std::string(tag_name(tag)));
    return status_[index_of(tag)];
}

std::vector<Tag> ClosureSet::tags() const {
    std::vector<Tag> out;
    for (Tag t : kAllTags) {
        if (has(t)) out.push_back(t);
    }
    return out;
}

std::vector<Literal> ClosureSet::with_status(Tag tag, Status s) const {
    std::vector<Literal> out;
    auto st = statuses(tag);
    for (std::uint32_t i = 0; i < st.size(); ++i) {
        if (st[i] == s) out.push_back(Literal::from_id(i));
    }
    return out;
}

std::size_t ClosureSet::count(Tag tag, Status s) const {
    auto st = statuses(tag);
    return static_cast<std::size_t>(std::count(st.begin(), st.end(), s));
}

void ClosureSet::merge(const ClosureSet& other) {
    for (Tag t : other.tags()) copy_tag(other, t, t);
}

void ClosureSet::copy_tag(const ClosureSet& other, Tag from, Tag to) {
    if (literal_count_ == 0 && tags().empty()) literal_count_ = other.literal_count_;
    if (other.literal_count_ != literal_count_) throw std::invalid_argument("closure size mismatch");
    auto st = other.statuses(from);
    set_tag(to, std::vector<Status>(st.begin(), st.end()));
}

bool ClosureSet::operator==(const ClosureSet& other) const {
    return literal_count_ == other.literal_count_ && present_ == other.present_ && status_ == other.status_;
}

}  // namespace defeasible
