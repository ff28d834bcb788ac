#include "defeasible/analysis.hpp"

#include "defeasible/engine.hpp"

#include <algorithm>
#include <deque>
#include <map>

namespace defeasible {

bool DependencyGraph::has_edge(std::uint32_t from, std::uint32_t to) const {
    const auto& out = successors[from];
    return std::find(out.begin(), out.end(), to) != out.end();
}

DependencyGraph dependency_graph(const Theory& theory, RuleScope scope, bool merged) {
    DependencyGraph g;
    g.scope = scope;
    g.merged = merged;
    g.successors.resize(merged ? theory.atom_count() : theory.literal_count());
    auto node = [&](Literal q) { return merged ? q.atom() : q.id(); };
    for (const Rule& r : theory.rules()) {
        if (!in_scope(r.kind, scope)) continue;
        auto& out = g.successors[node(r.head)];
        for (Literal b : r.body) out.push_back(node(b));
    }
    for (auto& out : g.successors) {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
    }
    return g;
}

std::vector<std::vector<std::uint32_t>> strongly_connected_components(const DependencyGraph& graph) {
    const std::size_t n = graph.node_count();
    constexpr std::uint32_t unvisited = UINT32_MAX;
    std::vector<std::uint32_t> index(n, unvisited), low(n, 0);
    std::vector<char> on_stack(n, 0);
    std::vector<std::uint32_t> stack;
    std::vector<std::vector<std::uint32_t>> components;
    std::uint32_t counter = 0;

    struct Frame {
        std::uint32_t node;
        std::size_t next;
    };
    std::vector<Frame> calls;

    for (std::uint32_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        calls.push_back({root, 0});
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;

        while (!calls.empty()) {
            Frame& f = calls.back();
            const auto& out = graph.successors[f.node];
            if (f.next < out.size()) {
                const std::uint32_t w = out[f.next++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    calls.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            const std::uint32_t v = f.node;
            calls.pop_back();
            if (!calls.empty()) low[calls.back().node] = std::min(low[calls.back().node], low[v]);
            if (low[v] == index[v]) {
                std::vector<std::uint32_t> comp;
                std::uint32_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp.push_back(w);
                } while (w != v);
                std::sort(comp.begin(), comp.end());
                components.push_back(std::move(comp));
            }
        }
    }
    return components;
}

std::vector<char> cyclic_nodes(const DependencyGraph& graph) {
    std::vector<char> cyclic(graph.node_count(), 0);
    for (const auto& comp : strongly_connected_components(graph)) {
        if (comp.size() > 1) {
            for (auto v : comp) cyclic[v] = 1;
        } else if (graph.has_edge(comp[0], comp[0])) {
            cyclic[comp[0]] = 1;
        }
    }
    return cyclic;
}

std::optional<std::vector<std::uint32_t>> layer_map(const DependencyGraph& graph) {
    const auto cyclic = cyclic_nodes(graph);
    if (std::find(cyclic.begin(), cyclic.end(), 1) != cyclic.end()) return std::nullopt;
    // Components arrive sinks first, so successors are always layered before their sources.
    std::vector<std::uint32_t> layer(graph.node_count(), 0);
    for (const auto& comp : strongly_connected_components(graph)) {
        const std::uint32_t v = comp[0];
        for (auto w : graph.successors[v]) layer[v] = std::max(layer[v], layer[w] + 1);
    }
    return layer;
}

bool layer_map_admissible(const Theory& theory, const std::vector<std::uint32_t>& layers, RuleScope scope,
                          bool merged) {
    auto node = [&](Literal q) { return merged ? q.atom() : q.id(); };
    for (const Rule& r : theory.rules()) {
        if (!in_scope(r.kind, scope)) continue;
        for (Literal b : r.body) {
            if (layers.at(node(r.head)) <= layers.at(node(b))) return false;
        }
    }
    return true;
}

namespace {

std::vector<Literal> cyclic_literals(const Theory& theory, RuleScope scope) {
    const auto cyclic = cyclic_nodes(dependency_graph(theory, scope, false));
    std::vector<Literal> out;
    for (std::uint32_t id = 0; id < cyclic.size(); ++id) {
        if (cyclic[id]) out.push_back(Literal::from_id(id));
    }
    return out;
}

bool has_rule_or_fact(const Theory& theory, Literal q) {
    return theory.is_fact(q) || !theory.rules_with_head(q).empty();
}

/// Atoms from which some atom in `targets` is reachable by a path of at least one edge.
std::vector<char> reaches(const DependencyGraph& merged, const std::vector<char>& targets) {
    const std::size_t n = merged.node_count();
    std::vector<std::vector<std::uint32_t>> predecessors(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        for (auto w : merged.successors[v]) predecessors[w].push_back(v);
    }
    std::vector<char> seen(n, 0);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t t = 0; t < n; ++t) {
        if (!targets[t]) continue;
        for (auto p : predecessors[t]) {
            if (!seen[p]) {
                seen[p] = 1;
                queue.push_back(p);
            }
        }
    }
    while (!queue.empty()) {
        const auto v = queue.front();
        queue.pop_front();
        for (auto p : predecessors[v]) {
            if (!seen[p]) {
                seen[p] = 1;
                queue.push_back(p);
            }
        }
    }
    return seen;
}

std::vector<char> conflicted_atoms(const Theory& theory) {
    std::vector<char> out(theory.atom_count(), 0);
    for (Literal q : conflicted_literals(theory)) out[q.atom()] = 1;
    return out;
}

std::vector<char> looping_atoms(const Theory& theory) {
    return cyclic_nodes(dependency_graph(theory, RuleScope::All, true));
}

/// No conflicted atom reaches an atom flagged in `targets`.
bool conflicts_avoid(const Theory& theory, const std::vector<char>& targets) {
    const auto conflicted = conflicted_atoms(theory);
    const auto seen = reaches(dependency_graph(theory, RuleScope::All, true), targets);
    for (std::size_t a = 0; a < conflicted.size(); ++a) {
        if (conflicted[a] && seen[a]) return false;
    }
    return true;
}

}  // namespace

LoopReport detect_loops(const Theory& theory) {
    LoopReport report;
    const auto looping = looping_atoms(theory);
    for (AtomId a = 0; a < looping.size(); ++a) {
        if (!looping[a]) continue;
        report.looping.push_back(Literal::from_id(2 * a));
        report.looping.push_back(Literal::from_id(2 * a + 1));
    }
    report.self_loops = cyclic_literals(theory, RuleScope::All);
    report.strict_loops = cyclic_literals(theory, RuleScope::Strict);
    report.sd_loops = cyclic_literals(theory, RuleScope::StrictDefeasible);
    return report;
}

std::vector<Literal> conflicted_literals(const Theory& theory) {
    std::vector<Literal> out;
    for (std::uint32_t id = 0; id < theory.literal_count(); ++id) {
        const Literal q = Literal::from_id(id);
        if (has_rule_or_fact(theory, q) && has_rule_or_fact(theory, q.complement())) out.push_back(q);
    }
    return out;
}

bool is_fact_deficient(const Theory& theory) {
    if (!theory.facts().empty()) return false;
    for (const Rule& r : theory.rules()) {
        if (r.kind == RuleKind::Strict && r.body.empty()) return false;
    }
    return true;
}

StructureReport classify_structure(const Theory& theory) {
    StructureReport s;
    s.loops = detect_loops(theory);
    s.conflicted = conflicted_literals(theory);
    s.hierarchical = s.loops.looping.empty();
    s.semi_hierarchical = s.loops.self_loops.empty();
    s.strict_semi_hierarchical = s.loops.strict_loops.empty();
    s.sd_semi_hierarchical = s.loops.sd_loops.empty();
    s.fact_deficient = is_fact_deficient(theory);
    s.empty_superiority = theory.superiority().empty();
    if (s.hierarchical) s.atom_layers = layer_map(dependency_graph(theory, RuleScope::All, true));
    if (s.semi_hierarchical) s.literal_layers = layer_map(dependency_graph(theory, RuleScope::All, false));
    return s;
}

// ---------------------------------------------------------------------------

std::string_view cert_status_name(CertStatus s) {
    switch (s) {
        case CertStatus::CertifiedSyntactic: return "certified-syntactic";
        case CertStatus::CertifiedSemantic: return "certified-semantic";
        case CertStatus::Unknown: return "unknown";
    }
    return "?";
}

DecisivenessCertificate certify_decisiveness(const Theory& theory, Tag tag, bool allow_semantic) {
    DecisivenessCertificate c;
    c.tag = tag;
    const LoopReport loops = detect_loops(theory);
    auto syntactic = [&](std::string basis) {
        c.status = CertStatus::CertifiedSyntactic;
        c.basis = std::move(basis);
        return c;
    };
    if (loops.looping.empty()) return syntactic("hierarchical");
    if (tag == Tag::Delta) {
        const bool no_strict = std::none_of(theory.rules().begin(), theory.rules().end(),
                                            [](const Rule& r) { return r.kind == RuleKind::Strict; });
        if (no_strict) return syntactic("no-strict-rules");
        if (loops.strict_loops.empty()) return syntactic("strict-semi-hierarchical");
    }
    if (tag == Tag::Lambda && loops.sd_loops.empty()) return syntactic("sd-semi-hierarchical");
    if (!allow_semantic) return c;

    const ClosureSet closure = compute_closure(theory, tag);
    c.witnesses = closure.with_status(tag, Status::Undecided);
    c.basis = "closure";
    if (c.witnesses.empty()) c.status = CertStatus::CertifiedSemantic;
    return c;
}

std::vector<std::string> check_undecided_lemma(const Theory& theory, const ClosureSet& closures) {
    std::vector<std::string> violations;
    auto expect = [&](Tag tag, Status want, Literal q, Literal p) {
        if (closures.status(tag, q) == want) return;
        violations.push_back("Delta-undecided " + theory.literal_name(p) + ": expected " +
                             (want == Status::Plus ? "+" : "-") + std::string(tag_name(tag)) + " " +
                             theory.literal_name(q));
    };
    for (Literal p : closures.with_status(Tag::Delta, Status::Undecided)) {
        expect(Tag::Delta, Status::Minus, p.complement(), p);
        expect(Tag::Partial, Status::Plus, p, p);
        expect(Tag::Partial, Status::Minus, p.complement(), p);
        expect(Tag::Lambda, Status::Plus, p, p);
    }
    return violations;
}

// ---------------------------------------------------------------------------

Theory simplify(const Theory& theory) {
    const std::size_t n_rules = theory.rules().size();
    std::vector<char> alive(n_rules, 1);
    std::vector<std::uint32_t> live_heads(theory.literal_count(), 0);
    for (const Rule& r : theory.rules()) ++live_heads[r.head.id()];

    auto remove = [&](RuleId r) {
        if (!alive[r]) return false;
        alive[r] = 0;
        --live_heads[theory.rule(r).head.id()];
        return true;
    };

    bool changed = true;
    while (changed) {
        changed = false;
        for (Literal p : theory.facts()) {
            for (RuleId r : theory.rules_with_head(p)) changed |= remove(r);
            for (RuleId r : theory.rules_with_head(p.complement())) {
                if (theory.rule(r).kind != RuleKind::Strict) changed |= remove(r);
            }
        }
        for (std::uint32_t id = 0; id < theory.literal_count(); ++id) {
            const Literal p = Literal::from_id(id);
            if (theory.is_fact(p) || live_heads[id] != 0) continue;
            for (RuleId r : theory.rules_with_body(p)) changed |= remove(r);
        }
    }

    TheoryBuilder b;
    for (AtomId a = 0; a < theory.atom_count(); ++a) b.intern_atom(theory.atom_name(a));
    for (Literal f : theory.facts()) b.add_fact(f);
    for (RuleId r = 0; r < n_rules; ++r) {
        if (!alive[r]) continue;
        const Rule& rule = theory.rule(r);
        b.add_rule(rule.label, rule.kind, rule.body, rule.head);
    }
    for (auto [sup, inf] : theory.superiority()) {
        if (alive[sup] && alive[inf]) b.add_superiority(theory.rule(sup).label, theory.rule(inf).label);
    }
    return b.freeze();
}

// ---------------------------------------------------------------------------

std::string_view regime_name(Regime r) {
    switch (r) {
        case Regime::ExactSubstitution: return "exact-substitution";
        case Regime::ExactEquality: return "exact-equality";
        case Regime::UnderApprox: return "under-approx";
        case Regime::OverApprox: return "over-approx";
        case Regime::None: return "none";
    }
    return "?";
}

std::string Precondition::describe() const {
    switch (kind) {
        case Kind::Hierarchical: return "hierarchical";
        case Kind::FactDeficient: return "fact-deficient";
        case Kind::EmptySuperiority: return "empty-superiority";
        case Kind::Decisive: return std::string(tag_name(tag)) + "-decisive (" + std::string(cert_status_name(status)) + ")";
        case Kind::NoConflictOnConflict: return "no conflicted literal depends on a conflicted literal";
        case Kind::NoConflictOnLoop: return "no conflicted literal depends on a looping literal";
    }
    return "?";
}

bool precondition_holds(const Theory& theory, const Precondition& p) {
    switch (p.kind) {
        case Precondition::Kind::Hierarchical: return detect_loops(theory).looping.empty();
        case Precondition::Kind::FactDeficient: return is_fact_deficient(theory);
        case Precondition::Kind::EmptySuperiority: return theory.superiority().empty();
        case Precondition::Kind::Decisive: return certify_decisiveness(theory, p.tag, true).certified();
        case Precondition::Kind::NoConflictOnConflict: return conflicts_avoid(theory, conflicted_atoms(theory));
        case Precondition::Kind::NoConflictOnLoop: return conflicts_avoid(theory, looping_atoms(theory));
    }
    return false;
}

namespace {

class RegimeClassifier {
public:
    explicit RegimeClassifier(const Theory& theory) : theory_(theory) {}

    std::optional<Precondition> structural(Precondition::Kind kind) {
        Precondition p{kind};
        if (!precondition_holds(theory_, p)) return std::nullopt;
        return p;
    }

    std::optional<Precondition> decisive(Tag tag) {
        auto it = certs_.find(tag);
        if (it == certs_.end()) it = certs_.emplace(tag, certify_decisiveness(theory_, tag, true)).first;
        if (!it->second.certified()) return std::nullopt;
        return Precondition{Precondition::Kind::Decisive, tag, it->second.status};
    }

    /// All of the given preconditions, or nullopt if one fails.
    template <class... Opt>
    static std::optional<std::vector<Precondition>> all(Opt... parts) {
        if (!(parts && ...)) return std::nullopt;
        return std::vector<Precondition>{*parts...};
    }

private:
    const Theory& theory_;
    std::map<Tag, DecisivenessCertificate> certs_;
};

}  // namespace

RegimeCertificate classify_regime(const Theory& theory, Tag target) {
    using K = Precondition::Kind;
    const bool star = target == Tag::PartialStar || target == Tag::DeltaApStar || target == Tag::SuppStar;
    RegimeCertificate cert;
    cert.target = target;
    cert.via = star ? Tag::PartialParStar : Tag::PartialPar;

    RegimeClassifier c(theory);
    auto take = [&](Regime regime, std::string basis, std::vector<Precondition> pre) {
        cert.regime = regime;
        cert.basis = std::move(basis);
        cert.preconditions = std::move(pre);
        return cert;
    };
    auto equiv = [&] { return c.all(c.structural(K::NoConflictOnConflict), c.structural(K::NoConflictOnLoop)); };

    switch (target) {
        case Tag::Partial:
        case Tag::PartialStar: {
            if (auto pre = equiv()) return take(Regime::ExactSubstitution, "equiv-theorem", *pre);
            if (auto pre = c.all(c.structural(K::Hierarchical)))
                return take(Regime::UnderApprox, "hierarchical-containment", *pre);
            if (auto pre = c.all(c.decisive(target))) return take(Regime::UnderApprox, "decisive-containment", *pre);
            break;
        }
        case Tag::DeltaAp:
        case Tag::DeltaApStar: {
            const Tag supp = star ? Tag::SuppStar : Tag::Supp;
            if (auto pre = equiv()) return take(Regime::ExactSubstitution, "equiv-theorem", *pre);
            auto fact_deficient = c.structural(K::FactDeficient);
            auto empty_sup = c.structural(K::EmptySuperiority);
            if (fact_deficient && empty_sup) {
                auto delta = c.decisive(Tag::Delta);
                auto lambda = c.decisive(Tag::Lambda);
                if (auto pre = c.all(fact_deficient, delta, empty_sup, lambda ? lambda : c.decisive(supp)))
                    return take(Regime::ExactEquality, "fact-deficient-equality", *pre);
            }
            if (auto pre = c.all(c.structural(K::Hierarchical), fact_deficient))
                return take(Regime::UnderApprox, "hierarchical-fact-deficient-containment", *pre);
            if (fact_deficient) {
                if (auto s = c.decisive(supp)) {
                    auto delta = c.decisive(Tag::Delta);
                    if (auto pre = c.all(fact_deficient, s, delta ? delta : c.decisive(target)))
                        return take(Regime::UnderApprox, "support-decisive-containment", *pre);
                }
            }
            if (auto pre = c.all(fact_deficient, empty_sup))
                return take(Regime::OverApprox, "fact-deficient-overapprox", *pre);
            break;
        }
        case Tag::Supp:
        case Tag::SuppStar: {
            const Tag principal = star ? Tag::DeltaApStar : Tag::DeltaAp;
            if (auto pre = c.all(c.decisive(principal)))
                return take(Regime::UnderApprox, "decisive-support-containment", *pre);
            break;
        }
        default: throw std::invalid_argument("classify_regime: not a target tag: " + std::string(tag_name(target)));
    }
    return take(Regime::None, "none", {});
}

bool reverify(const Theory& theory, const RegimeCertificate& certificate) {
    if (certificate.regime == Regime::None) return certificate.preconditions.empty();
    if (certificate.preconditions.empty()) return false;
    return std::all_of(certificate.preconditions.begin(), certificate.preconditions.end(),
                       [&](const Precondition& p) { return precondition_holds(theory, p); });
}

// ---------------------------------------------------------------------------

namespace {

nlohmann::json literal_names(const Theory& theory, const std::vector<Literal>& lits) {
    auto out = nlohmann::json::array();
    for (Literal q : lits) out.push_back(theory.literal_name(q));
    return out;
}

}  // namespace

nlohmann::json to_json(const Theory& theory, const StructureReport& report) {
    nlohmann::json j;
    j["hierarchical"] = report.hierarchical;
    j["semi_hierarchical"] = report.semi_hierarchical;
    j["strict_semi_hierarchical"] = report.strict_semi_hierarchical;
    j["sd_semi_hierarchical"] = report.sd_semi_hierarchical;
    j["fact_deficient"] = report.fact_deficient;
    j["empty_superiority"] = report.empty_superiority;
    j["looping_literals"] = literal_names(theory, report.loops.looping);
    j["self_loops"] = literal_names(theory, report.loops.self_loops);
    j["strict_loops"] = literal_names(theory, report.loops.strict_loops);
    j["conflicted_literals"] = literal_names(theory, report.conflicted);
    if (report.atom_layers) {
        nlohmann::json layers = nlohmann::json::object();
        for (AtomId a = 0; a < theory.atom_count(); ++a) layers[theory.atom_name(a)] = (*report.atom_layers)[a];
        j["atom_layers"] = layers;
    }
    return j;
}

nlohmann::json to_json(const Theory& theory, const DecisivenessCertificate& certificate) {
    return {
        {"tag", tag_name(certificate.tag)},
        {"status", cert_status_name(certificate.status)},
        {"basis", certificate.basis},
        {"witnesses", literal_names(theory, certificate.witnesses)},
    };
}

nlohmann::json to_json(const RegimeCertificate& certificate) {
    auto pre = nlohmann::json::array();
    for (const auto& p : certificate.preconditions) pre.push_back(p.describe());
    return {
        {"target", tag_name(certificate.target)},
        {"via", tag_name(certificate.via)},
        {"regime", regime_name(certificate.regime)},
        {"basis", certificate.basis},
        {"preconditions", pre},
    };
}

}  // namespace defeasible
