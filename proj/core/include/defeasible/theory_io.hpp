#pragma once

// Text format for defeasible theories, grounding, and conclusion output.
//
//   % comment to end of line
//   fact penguin(tweety).
//   r3: penguin(X) -> bird(X).       strict
//   r1: bird(X) => fly(X).           defeasible
//   r4: injured(X) ~> ~fly(X).       defeater
//   r2 > r1.                         superiority
//
// Capitalised terms are variables, lowercase terms constants.

#include "defeasible/model.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace defeasible {

struct SourcePos {
    int line = 1;
    int column = 1;
};

struct Term {
    std::string text;
    bool variable = false;
};

struct SourceLiteral {
    std::string predicate;
    std::vector<Term> args;
    bool positive = true;
    SourcePos pos;

    bool ground() const;
    /// "fly(tweety)" style atom text, or with variables as written.
    std::string atom_text() const;
};

struct SourceRule {
    std::string label;
    RuleKind kind = RuleKind::Defeasible;
    std::vector<SourceLiteral> body;
    SourceLiteral head;
    SourcePos pos;
};

struct SourceFact {
    SourceLiteral literal;
    SourcePos pos;
};

struct SourceSuperiority {
    std::string superior;
    std::string inferior;
    SourcePos pos;
};

struct SourceTheory {
    std::vector<SourceFact> facts;
    std::vector<SourceRule> rules;
    std::vector<SourceSuperiority> superiority;
    /// Constants in order of first appearance.
    std::vector<std::string> constants;
};

struct Diagnostic {
    enum class Kind { Lexical, Syntax, DuplicateLabel, Grounding };
    Kind kind;
    SourcePos pos;
    std::string message;

    std::string to_string() const;
};

class ParseError : public std::runtime_error {
public:
    explicit ParseError(std::vector<Diagnostic> diagnostics);
    const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

private:
    std::vector<Diagnostic> diagnostics_;
};

/// Throws ParseError carrying every diagnostic found (the parser resynchronises at '.').
SourceTheory parse(std::string_view text);

struct GroundingEntry {
    std::string label;
    std::vector<std::string> variables;
    /// (instance label, constant bound to each variable)
    std::vector<std::pair<std::string, std::vector<std::string>>> instances;
};

/// One entry per source rule that has variables.
using GroundingMap = std::vector<GroundingEntry>;

struct GroundTheory {
    Theory theory;
    GroundingMap grounding;
};

/// Instantiates every rule over the constant universe. Superiority between two labels
/// is lifted to all pairs of their instances. Throws ParseError (Grounding diagnostics)
/// for non-ground facts or variables without constants, TheoryError for invalid results.
GroundTheory ground(const SourceTheory& source);

/// parse + ground.
Theory load_theory(std::string_view text);
Theory load_theory_file(const std::filesystem::path& path);

/// Canonical text: facts, rules, superiority pairs, each in index order.
std::string serialize_theory(const Theory& theory);

enum class OutputFormat { Text, Json };

struct EmitOptions {
    OutputFormat format = OutputFormat::Text;
    bool include_undecided = false;
    /// Empty means every tag present in the closure.
    std::vector<Tag> tags;
};

/// Text: one `+tag lit` / `-tag lit` (and `?tag lit`) line per record, ordered by tag then
/// literal id. Json: one {"tag","plus","minus","undecided"} object per tag; a single tag
/// is emitted as a bare object, several as an array.
std::string emit_conclusions(const Theory& theory, const ClosureSet& closure, const EmitOptions& options = {});

}  // namespace defeasible
