#include "cli.hpp"

#include "defeasible/analysis.hpp"
#include "defeasible/engine.hpp"
#include "defeasible/pipeline.hpp"
#include "defeasible/theory_io.hpp"
#include "defeasible/workbench/bench.hpp"
#include "defeasible/workbench/generator.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>

namespace dlkit {

namespace {

using namespace defeasible;

/// Thrown for problems with the input (as opposed to the command line): exit code 1.
struct Diagnostics : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Command-line problems detected after CLI11 parsing: exit code 2.
struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Tag parse_tag(const std::string& name) {
    auto tag = tag_from_name(name);
    if (!tag) throw Usage("unknown logic '" + name + "'");
    return *tag;
}

Theory load(const std::string& path) {
    try {
        return load_theory_file(path);
    } catch (const ParseError& e) {
        std::string msg;
        for (const auto& d : e.diagnostics()) msg += path + ":" + d.to_string() + "\n";
        if (!msg.empty()) msg.pop_back();
        throw Diagnostics(msg);
    } catch (const TheoryError& e) {
        std::string msg;
        for (const auto& f : e.report().findings) msg += path + ": " + f.message + "\n";
        if (!msg.empty()) msg.pop_back();
        throw Diagnostics(msg);
    } catch (const std::runtime_error& e) {
        throw Diagnostics(e.what());
    }
}

std::string names(const Theory& theory, const std::vector<Literal>& lits) {
    std::string out;
    for (Literal q : lits) out += (out.empty() ? "" : " ") + theory.literal_name(q);
    return out.empty() ? "-" : out;
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

constexpr Tag kTargets[] = {Tag::Partial, Tag::PartialStar, Tag::DeltaAp, Tag::DeltaApStar, Tag::Supp, Tag::SuppStar};

void cmd_analyze(const std::string& file, bool json, std::ostream& out) {
    const Theory theory = load(file);
    const StructureReport s = classify_structure(theory);
    std::vector<DecisivenessCertificate> certs;
    for (Tag tag : kAllTags) certs.push_back(certify_decisiveness(theory, tag, true));
    std::vector<RegimeCertificate> regimes;
    for (Tag tag : kTargets) regimes.push_back(classify_regime(theory, tag));

    if (json) {
        nlohmann::json j;
        j["structure"] = to_json(theory, s);
        j["decisiveness"] = nlohmann::json::array();
        for (const auto& c : certs) j["decisiveness"].push_back(to_json(theory, c));
        j["regimes"] = nlohmann::json::array();
        for (const auto& r : regimes) j["regimes"].push_back(to_json(r));
        out << j.dump(2) << "\n";
        return;
    }
    out << "atoms: " << theory.atom_count() << "  rules: " << theory.rules().size()
        << "  facts: " << theory.facts().size() << "  superiority: " << theory.superiority().size() << "\n";
    out << "hierarchical: " << yes_no(s.hierarchical) << "\n";
    out << "semi-hierarchical: " << yes_no(s.semi_hierarchical) << "\n";
    out << "strict-semi-hierarchical: " << yes_no(s.strict_semi_hierarchical) << "\n";
    out << "sd-semi-hierarchical: " << yes_no(s.sd_semi_hierarchical) << "\n";
    out << "fact-deficient: " << yes_no(s.fact_deficient) << "\n";
    out << "empty-superiority: " << yes_no(s.empty_superiority) << "\n";
    out << "looping: " << names(theory, s.loops.looping) << "\n";
    out << "self-loops: " << names(theory, s.loops.self_loops) << "\n";
    out << "strict-loops: " << names(theory, s.loops.strict_loops) << "\n";
    out << "conflicted: " << names(theory, s.conflicted) << "\n";
    for (const auto& c : certs) {
        out << "decisive " << tag_name(c.tag) << ": " << cert_status_name(c.status);
        if (c.certified()) out << " (" << c.basis << ")";
        if (!c.witnesses.empty()) out << " undecided: " << names(theory, c.witnesses);
        out << "\n";
    }
    for (const auto& r : regimes) {
        out << "regime " << tag_name(r.target) << ": " << regime_name(r.regime);
        if (r.regime != Regime::None) out << " via " << tag_name(r.via) << " (" << r.basis << ")";
        out << "\n";
    }
}

void cmd_infer(const std::string& file, const std::string& logic, bool json, bool undecided, std::ostream& out) {
    const Tag tag = parse_tag(logic);
    const Theory theory = load(file);
    EmitOptions opts;
    opts.format = json ? OutputFormat::Json : OutputFormat::Text;
    opts.include_undecided = undecided || json;
    opts.tags = {tag};
    out << emit_conclusions(theory, compute_closure(theory, tag), opts);
    if (json) out << "\n";
}

void cmd_query(const std::string& file, const std::string& logic, const std::string& literal, std::ostream& out) {
    const Tag tag = parse_tag(logic);
    const Theory theory = load(file);
    Reasoner reasoner(theory);
    try {
        out << status_name(reasoner.query(tag, literal)) << "\n";
    } catch (const UnknownLiteral& e) {
        throw Diagnostics(e.what());
    }
}

void cmd_compare(const std::string& file, const std::string& logics, bool json, std::ostream& out) {
    const auto comma = logics.find(',');
    if (comma == std::string::npos) throw Usage("--logics expects two tags separated by a comma");
    const Tag a = parse_tag(logics.substr(0, comma));
    const Tag b = parse_tag(logics.substr(comma + 1));
    const Theory theory = load(file);
    const ComparisonDiff diff = compare(theory, a, b);
    if (json) {
        out << to_json(theory, diff).dump(2) << "\n";
        return;
    }
    out << "agreements: " << diff.agreements << "  differences: " << diff.entries.size() << "\n";
    for (const auto& e : diff.entries) {
        out << theory.literal_name(e.literal) << ": " << tag_name(a) << "=" << status_name(e.a) << " " << tag_name(b)
            << "=" << status_name(e.b) << "\n";
    }
    out << "+" << tag_name(a) << " within +" << tag_name(b) << ": " << yes_no(diff.a_plus_within_b()) << "\n";
    out << "+" << tag_name(b) << " within +" << tag_name(a) << ": " << yes_no(diff.b_plus_within_a()) << "\n";
}

void cmd_pipeline(const std::string& file, const std::string& target_name, bool explain, bool json, std::ostream& out) {
    const Tag target = parse_tag(target_name);
    const Theory theory = load(file);
    const PipelinePlan p = plan(theory, target);
    const PipelineResult result = execute(theory, p);
    if (json) {
        nlohmann::json j = to_json(p, result.provenance);
        EmitOptions opts;
        opts.format = OutputFormat::Json;
        opts.include_undecided = true;
        opts.tags = {target};
        j["conclusions"] = nlohmann::json::parse(emit_conclusions(theory, result.closure, opts));
        out << j.dump(2) << "\n";
        return;
    }
    if (explain) {
        const Provenance& prov = result.provenance;
        out << "route: " << route_name(prov.route) << "\n";
        out << "regime: " << regime_name(p.certificate.regime) << "\n";
        out << "basis: " << (prov.basis.empty() ? "none" : prov.basis) << "\n";
        for (const auto& pre : p.certificate.preconditions) out << "precondition: " << pre.describe() << "\n";
        out << "seeded: " << prov.seeded << "  residual: " << prov.residual
            << "  decided by " << tag_name(p.certificate.via) << ": " << prov.decided_by_partial_par << "\n";
        for (const auto& ph : prov.phases) out << "phase " << ph.phase << ": " << ph.ms << " ms\n";
    }
    EmitOptions opts;
    opts.tags = {target};
    out << emit_conclusions(theory, result.closure, opts);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Diagnostics("cannot write " + path);
    f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Defeasible logic toolkit", "dlkit"};
    app.require_subcommand(1);

    std::string file, logic, literal, logics, target, output = "-", spec_text;
    bool json = false, undecided = false, explain = false;

    auto* parse_cmd = app.add_subcommand("parse", "Parse and ground a theory, print its canonical form");
    parse_cmd->add_option("FILE", file, "Theory file")->required();

    auto* analyze_cmd = app.add_subcommand("analyze", "Structure, decisiveness and regime report");
    analyze_cmd->add_option("FILE", file, "Theory file")->required();
    analyze_cmd->add_flag("--json", json, "JSON output");

    auto* infer_cmd = app.add_subcommand("infer", "Compute the closure for one logic");
    infer_cmd->add_option("FILE", file, "Theory file")->required();
    infer_cmd->add_option("--logic", logic, "Tag name")->required();
    infer_cmd->add_flag("--json", json, "JSON output");
    infer_cmd->add_flag("--undecided", undecided, "Also list undecided literals");

    auto* query_cmd = app.add_subcommand("query", "Status of one literal");
    query_cmd->add_option("FILE", file, "Theory file")->required();
    query_cmd->add_option("LITERAL", literal, "Literal, e.g. ~fly(tweety)")->required();
    query_cmd->add_option("--logic", logic, "Tag name")->required();

    auto* compare_cmd = app.add_subcommand("compare", "Per-literal differences between two logics");
    compare_cmd->add_option("FILE", file, "Theory file")->required();
    compare_cmd->add_option("--logics", logics, "Two tags, e.g. partial_par,partial")->required();
    compare_cmd->add_flag("--json", json, "JSON output");

    auto* pipeline_cmd = app.add_subcommand("pipeline", "Plan and run the partial_par pipeline for a target logic");
    pipeline_cmd->add_option("FILE", file, "Theory file")->required();
    pipeline_cmd->add_option("--target", target, "Target tag")->required();
    pipeline_cmd->add_flag("--explain", explain, "Print route, certificate and provenance");
    pipeline_cmd->add_flag("--json", json, "JSON output");

    workbench::GenSpec spec;
    std::string shape = "free";
    auto* gen_cmd = app.add_subcommand("gen", "Generate a random theory");
    gen_cmd->add_option("--spec", spec_text, "Full spec as key=value,... (overrides the flags)");
    gen_cmd->add_option("--atoms", spec.atoms, "Number of atoms")->capture_default_str();
    gen_cmd->add_option("--rules", spec.rules, "Number of rules")->capture_default_str();
    gen_cmd->add_option("--facts", spec.facts, "Number of facts")->capture_default_str();
    gen_cmd->add_option("--max-body", spec.max_body, "Maximum body size")->capture_default_str();
    gen_cmd->add_option("--strict", spec.strict_weight, "Strict rule weight")->capture_default_str();
    gen_cmd->add_option("--defeasible", spec.defeasible_weight, "Defeasible rule weight")->capture_default_str();
    gen_cmd->add_option("--defeater", spec.defeater_weight, "Defeater weight")->capture_default_str();
    gen_cmd->add_option("--superiority", spec.superiority_density, "Superiority density in [0,1]")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    gen_cmd->add_option("--shape", shape, "free, hierarchical, fact-deficient, conflict-chain-free, conflict-free, "
                                          "strict-semi-hierarchical, sd-semi-hierarchical")
        ->capture_default_str();
    gen_cmd->add_flag("--fact-deficient", spec.fact_deficient, "No facts, no empty-bodied strict rules");
    gen_cmd->add_option("--seed", spec.seed, "Random seed")->capture_default_str();
    gen_cmd->add_option("-o,--output", output, "Output file, - for stdout")->capture_default_str();

    std::size_t repeat = 3;
    auto* bench_cmd = app.add_subcommand("bench", "Time every closure on a theory and print a JSON record");
    bench_cmd->add_option("FILE", file, "Theory file");
    bench_cmd->add_option("--gen-spec", spec_text, "Generate the theory from a spec instead of a file");
    bench_cmd->add_option("--repeat", repeat, "Repetitions per tag")->capture_default_str();

    if (!args.empty() && !args[0].empty() && args[0][0] != '-') {
        const auto subs = app.get_subcommands([](const CLI::App*) { return true; });
        const bool known = std::any_of(subs.begin(), subs.end(), [&](const CLI::App* s) { return s->get_name() == args[0]; });
        if (!known) {
            err << "error: unknown subcommand '" << args[0] << "'\n" << app.help();
            return 2;
        }
    }

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    try {
        if (*parse_cmd) {
            out << serialize_theory(load(file));
        } else if (*analyze_cmd) {
            cmd_analyze(file, json, out);
        } else if (*infer_cmd) {
            cmd_infer(file, logic, json, undecided, out);
        } else if (*query_cmd) {
            cmd_query(file, logic, literal, out);
        } else if (*compare_cmd) {
            cmd_compare(file, logics, json, out);
        } else if (*pipeline_cmd) {
            cmd_pipeline(file, target, explain, json, out);
        } else if (*gen_cmd) {
            try {
                if (spec_text.empty()) {
                    spec.shape = workbench::shape_from_name(shape);
                } else {
                    spec = workbench::parse_gen_spec(spec_text);
                }
            } catch (const workbench::GenerationError& e) {
                throw Usage(e.what());
            }
            Theory theory;
            try {
                theory = workbench::generate(spec);
            } catch (const workbench::GenerationError& e) {
                throw Diagnostics(e.what());
            }
            write_output(output, "% " + workbench::format_gen_spec(spec) + "\n" + serialize_theory(theory), out);
        } else if (*bench_cmd) {
            if (file.empty() == spec_text.empty()) throw Usage("bench needs exactly one of FILE or --gen-spec");
            Theory theory;
            std::string source = file;
            if (!spec_text.empty()) {
                try {
                    const auto gs = workbench::parse_gen_spec(spec_text);
                    theory = workbench::generate(gs);
                    source = "gen:" + workbench::format_gen_spec(gs);
                } catch (const workbench::GenerationError& e) {
                    throw Usage(e.what());
                }
            } else {
                theory = load(file);
            }
            out << workbench::to_json(workbench::run_bench(theory, repeat, source)).dump(2) << "\n";
        }
    } catch (const Usage& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    } catch (const Diagnostics& e) {
        err << e.what() << "\n";
        return 1;
    }
    return 0;
}

}  // namespace dlkit
