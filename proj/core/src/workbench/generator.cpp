#include "defeasible/workbench/generator.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <tuple>

namespace defeasible::workbench {

namespace {

constexpr std::array<std::pair<Shape, std::string_view>, 7> kShapes{{
    {Shape::Free, "free"},
    {Shape::Hierarchical, "hierarchical"},
    {Shape::FactDeficient, "fact-deficient"},
    {Shape::ConflictChainFree, "conflict-chain-free"},
    {Shape::ConflictFree, "conflict-free"},
    {Shape::StrictSemiHierarchical, "strict-semi-hierarchical"},
    {Shape::SdSemiHierarchical, "sd-semi-hierarchical"},
}};

Literal lit(AtomId a, bool negative) { return Literal::from_id(2 * a + (negative ? 1 : 0)); }

class Generator {
public:
    explicit Generator(const GenSpec& spec) : spec_(spec), rng_(spec.seed), n_(spec.atoms) {
        if (n_ == 0) throw GenerationError("atoms must be positive");
        if (spec.strict_weight < 0 || spec.defeasible_weight < 0 || spec.defeater_weight < 0 ||
            spec.strict_weight + spec.defeasible_weight + spec.defeater_weight <= 0) {
            throw GenerationError("rule kind weights must be non-negative and not all zero");
        }
        fact_deficient_ = spec.fact_deficient || spec.shape == Shape::FactDeficient;
        setup_shape();
    }

    Theory run() {
        const std::size_t attempts = 50 * spec_.rules + 100;
        for (std::size_t i = 0; i < attempts && rules_.size() < spec_.rules; ++i) draw_rule();
        if (!fact_deficient_) draw_facts();

        TheoryBuilder b;
        for (AtomId a = 0; a < n_; ++a) b.intern_atom("a" + std::to_string(a));
        for (Literal f : facts_) b.add_fact(f);
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            b.add_rule("r" + std::to_string(i), rules_[i].kind, rules_[i].body, rules_[i].head);
        }
        for (auto [sup, inf] : draw_superiority()) b.add_superiority("r" + std::to_string(sup), "r" + std::to_string(inf));
        return b.freeze();
    }

private:
    enum class Group { Base, Conflict, Upper };

    void setup_shape() {
        switch (spec_.shape) {
            case Shape::Hierarchical: {
                if (spec_.max_body > 0 && n_ < 2) throw GenerationError("hierarchical shape with bodies needs at least 2 atoms");
                rank_ = permutation(n_);
                break;
            }
            case Shape::ConflictChainFree: {
                if (n_ < 2) throw GenerationError("conflict-chain-free shape needs at least 2 atoms");
                const auto order = permutation(n_);
                const std::size_t base = std::max<std::size_t>(1, n_ * 2 / 5);
                const std::size_t conflict = std::max<std::size_t>(1, std::min(n_ - base, n_ * 3 / 10));
                group_.resize(n_);
                rank_.resize(n_);
                for (AtomId a = 0; a < n_; ++a) {
                    rank_[a] = order[a];
                    group_[a] = order[a] < base ? Group::Base : order[a] < base + conflict ? Group::Conflict : Group::Upper;
                }
                draw_signs();
                break;
            }
            case Shape::ConflictFree: draw_signs(); break;
            case Shape::StrictSemiHierarchical:
            case Shape::SdSemiHierarchical: rank_ = permutation(2 * n_); break;
            case Shape::Free:
            case Shape::FactDeficient: break;
        }
    }

    std::vector<std::uint32_t> permutation(std::size_t n) {
        std::vector<std::uint32_t> p(n);
        std::iota(p.begin(), p.end(), 0u);
        std::shuffle(p.begin(), p.end(), rng_);
        return p;
    }

    void draw_signs() {
        sign_.resize(n_);
        for (auto& s : sign_) s = coin(0.5);
    }

    bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }

    std::size_t uniform(std::size_t lo, std::size_t hi) {
        return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
    }

    RuleKind draw_kind() {
        std::discrete_distribution<int> d({spec_.strict_weight, spec_.defeasible_weight, spec_.defeater_weight});
        switch (d(rng_)) {
            case 0: return RuleKind::Strict;
            case 1: return RuleKind::Defeasible;
            default: return RuleKind::Defeater;
        }
    }

    /// Sign-restricted literal for atom a, or a random sign when unrestricted.
    Literal signed_literal(AtomId a) {
        if (!sign_.empty() && (group_.empty() || group_[a] != Group::Conflict)) return lit(a, sign_[a]);
        return lit(a, coin(0.5));
    }

    Literal draw_head() { return signed_literal(static_cast<AtomId>(uniform(0, n_ - 1))); }

    std::vector<Literal> body_pool(RuleKind kind, Literal head) const {
        std::vector<Literal> pool;
        auto all_literals = [&] {
            for (std::uint32_t id = 0; id < 2 * n_; ++id) pool.push_back(Literal::from_id(id));
        };
        switch (spec_.shape) {
            case Shape::Hierarchical:
                for (AtomId a = 0; a < n_; ++a) {
                    if (rank_[a] < rank_[head.atom()]) {
                        pool.push_back(lit(a, false));
                        pool.push_back(lit(a, true));
                    }
                }
                break;
            case Shape::ConflictChainFree: {
                const Group g = group_[head.atom()];
                if (g == Group::Upper) {
                    all_literals();
                    break;
                }
                for (AtomId a = 0; a < n_; ++a) {
                    if (group_[a] != Group::Base) continue;
                    if (g == Group::Base && rank_[a] >= rank_[head.atom()]) continue;
                    pool.push_back(lit(a, false));
                    pool.push_back(lit(a, true));
                }
                break;
            }
            case Shape::StrictSemiHierarchical:
            case Shape::SdSemiHierarchical: {
                const bool ranked = kind == RuleKind::Strict ||
                                    (spec_.shape == Shape::SdSemiHierarchical && kind == RuleKind::Defeasible);
                if (!ranked) {
                    all_literals();
                    break;
                }
                for (std::uint32_t id = 0; id < 2 * n_; ++id) {
                    if (rank_[id] < rank_[head.id()]) pool.push_back(Literal::from_id(id));
                }
                break;
            }
            default: all_literals(); break;
        }
        return pool;
    }

    void draw_rule() {
        RuleKind kind = draw_kind();
        const Literal head = draw_head();
        std::vector<Literal> pool = body_pool(kind, head);
        std::size_t size = uniform(0, std::min(spec_.max_body, pool.size()));
        if (fact_deficient_ && kind == RuleKind::Strict && size == 0) {
            if (pool.empty() || spec_.max_body == 0) {
                kind = RuleKind::Defeasible;
            } else {
                size = 1;
            }
        }
        std::shuffle(pool.begin(), pool.end(), rng_);
        std::vector<Literal> body(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(size));
        std::sort(body.begin(), body.end());

        auto key = std::make_tuple(static_cast<int>(kind), head.id(), std::vector<std::uint32_t>{});
        for (Literal b : body) std::get<2>(key).push_back(b.id());
        if (!seen_.insert(key).second) return;
        rules_.push_back({"", kind, std::move(body), head});
    }

    void draw_facts() {
        std::vector<char> used(2 * n_, 0);
        const std::size_t attempts = 20 * spec_.facts + 20;
        for (std::size_t i = 0; i < attempts && facts_.size() < spec_.facts; ++i) {
            const Literal f = draw_head();
            if (used[f.id()] || used[f.complement().id()]) continue;
            used[f.id()] = 1;
            facts_.push_back(f);
        }
    }

    std::vector<std::pair<std::size_t, std::size_t>> draw_superiority() {
        std::vector<std::pair<std::size_t, std::size_t>> pairs;
        if (spec_.superiority_density <= 0) return pairs;
        const auto order = permutation(rules_.size());
        for (std::size_t i = 0; i < rules_.size(); ++i) {
            for (std::size_t j = i + 1; j < rules_.size(); ++j) {
                if (rules_[i].head != rules_[j].head.complement()) continue;
                if (!coin(spec_.superiority_density)) continue;
                if (order[i] < order[j]) {
                    pairs.emplace_back(i, j);
                } else {
                    pairs.emplace_back(j, i);
                }
            }
        }
        return pairs;
    }

    const GenSpec& spec_;
    std::mt19937_64 rng_;
    std::size_t n_;
    bool fact_deficient_ = false;
    std::vector<std::uint32_t> rank_;
    std::vector<Group> group_;
    std::vector<char> sign_;
    std::vector<Rule> rules_;
    std::vector<Literal> facts_;
    std::set<std::tuple<int, std::uint32_t, std::vector<std::uint32_t>>> seen_;
};

template <class T>
T parse_number(std::string_view key, std::string_view value) {
    T out{};
    const auto* end = value.data() + value.size();
    auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc{} || ptr != end) {
        throw GenerationError("bad value for " + std::string(key) + ": '" + std::string(value) + "'");
    }
    return out;
}

}  // namespace

std::string_view shape_name(Shape s) {
    for (auto [shape, name] : kShapes) {
        if (shape == s) return name;
    }
    return "?";
}

Shape shape_from_name(std::string_view name) {
    for (auto [shape, n] : kShapes) {
        if (n == name) return shape;
    }
    throw GenerationError("unknown shape '" + std::string(name) + "'");
}

Theory generate(const GenSpec& spec) { return Generator(spec).run(); }

GenSpec parse_gen_spec(std::string_view text) {
    GenSpec spec;
    while (!text.empty()) {
        const auto comma = text.find(',');
        const std::string_view item = text.substr(0, comma);
        text = comma == std::string_view::npos ? std::string_view{} : text.substr(comma + 1);
        if (item.empty()) continue;
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw GenerationError("expected key=value, got '" + std::string(item) + "'");
        const std::string_view key = item.substr(0, eq);
        const std::string_view value = item.substr(eq + 1);
        if (key == "atoms") spec.atoms = parse_number<std::size_t>(key, value);
        else if (key == "rules") spec.rules = parse_number<std::size_t>(key, value);
        else if (key == "facts") spec.facts = parse_number<std::size_t>(key, value);
        else if (key == "max_body") spec.max_body = parse_number<std::size_t>(key, value);
        else if (key == "strict") spec.strict_weight = parse_number<double>(key, value);
        else if (key == "defeasible") spec.defeasible_weight = parse_number<double>(key, value);
        else if (key == "defeater") spec.defeater_weight = parse_number<double>(key, value);
        else if (key == "superiority") spec.superiority_density = parse_number<double>(key, value);
        else if (key == "shape") spec.shape = shape_from_name(value);
        else if (key == "fact_deficient") spec.fact_deficient = value == "1" || value == "true";
        else if (key == "seed") spec.seed = parse_number<std::uint64_t>(key, value);
        else throw GenerationError("unknown spec key '" + std::string(key) + "'");
    }
    return spec;
}

std::string format_gen_spec(const GenSpec& spec) {
    std::ostringstream out;
    out << "atoms=" << spec.atoms << ",rules=" << spec.rules << ",facts=" << spec.facts << ",max_body=" << spec.max_body
        << ",strict=" << spec.strict_weight << ",defeasible=" << spec.defeasible_weight
        << ",defeater=" << spec.defeater_weight << ",superiority=" << spec.superiority_density
        << ",shape=" << shape_name(spec.shape) << ",fact_deficient=" << (spec.fact_deficient ? 1 : 0)
        << ",seed=" << spec.seed;
    return out.str();
}

std::size_t for_each_small_theory(const std::function<void(const Theory&)>& visit) {
    struct Shape1 {
        RuleKind kind;
        std::optional<Literal> body;
        Literal head;
    };
    std::vector<Shape1> shapes;
    for (RuleKind kind : {RuleKind::Strict, RuleKind::Defeasible, RuleKind::Defeater}) {
        for (std::uint32_t head = 0; head < 4; ++head) {
            shapes.push_back({kind, std::nullopt, Literal::from_id(head)});
            for (std::uint32_t b = 0; b < 4; ++b) shapes.push_back({kind, Literal::from_id(b), Literal::from_id(head)});
        }
    }

    std::size_t visited = 0;
    auto emit = [&](const std::vector<std::size_t>& chosen) {
        std::vector<std::optional<std::pair<std::size_t, std::size_t>>> sup{std::nullopt};
        for (std::size_t i = 0; i < chosen.size(); ++i) {
            for (std::size_t j = 0; j < chosen.size(); ++j) {
                if (i != j && shapes[chosen[i]].head == shapes[chosen[j]].head.complement()) sup.emplace_back(std::pair{i, j});
            }
        }
        for (int fact = -1; fact < 4; ++fact) {
            for (const auto& pair : sup) {
                TheoryBuilder b;
                b.intern_atom("a");
                b.intern_atom("b");
                if (fact >= 0) b.add_fact(Literal::from_id(static_cast<std::uint32_t>(fact)));
                for (std::size_t i = 0; i < chosen.size(); ++i) {
                    const Shape1& s = shapes[chosen[i]];
                    std::vector<Literal> body;
                    if (s.body) body.push_back(*s.body);
                    b.add_rule("r" + std::to_string(i), s.kind, std::move(body), s.head);
                }
                if (pair) b.add_superiority("r" + std::to_string(pair->first), "r" + std::to_string(pair->second));
                visit(b.freeze());
                ++visited;
            }
        }
    };

    const std::size_t m = shapes.size();
    emit({});
    for (std::size_t i = 0; i < m; ++i) {
        emit({i});
        for (std::size_t j = i + 1; j < m; ++j) {
            emit({i, j});
            for (std::size_t k = j + 1; k < m; ++k) emit({i, j, k});
        }
    }
    return visited;
}

}  // namespace defeasible::workbench
