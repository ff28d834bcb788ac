#include "defeasible/theory_io.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace defeasible {

bool SourceLiteral::ground() const {
    return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.variable; });
}

std::string SourceLiteral::atom_text() const {
    std::string out = predicate;
    if (!args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (i) out += ',';
            out += args[i].text;
        }
        out += ')';
    }
    return out;
}

std::string Diagnostic::to_string() const {
    return std::to_string(pos.line) + ":" + std::to_string(pos.column) + ": " + message;
}

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error([&] {
          std::string msg;
          for (const auto& d : diagnostics) {
              if (!msg.empty()) msg += '\n';
              msg += d.to_string();
          }
          return msg;
      }()),
      diagnostics_(std::move(diagnostics)) {}

namespace {

enum class Tok { Ident, Variable, LParen, RParen, Comma, Dot, Colon, Gt, Tilde, Strict, Defeasible, End };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
    std::size_t offset = 0;  // byte offset, used to check adjacency of '~' '>'
};

bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '#' || c == '\'';
}

class Lexer {
public:
    Lexer(std::string_view text, std::vector<Diagnostic>& diags) : text_(text), diags_(diags) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            skip_space();
            SourcePos pos{line_, col_};
            if (i_ >= text_.size()) {
                out.push_back({Tok::End, "", pos, i_});
                return out;
            }
            char c = text_[i_];
            std::size_t start = i_;
            auto single = [&](Tok k) {
                advance();
                out.push_back({k, std::string(1, c), pos, start});
            };
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
                while (i_ < text_.size() && ident_char(text_[i_])) advance();
                std::string word(text_.substr(start, i_ - start));
                bool variable = std::isupper(static_cast<unsigned char>(word[0])) || word[0] == '_';
                out.push_back({variable ? Tok::Variable : Tok::Ident, std::move(word), pos, start});
            } else if (c == '-' && peek(1) == '>') {
                advance();
                advance();
                out.push_back({Tok::Strict, "->", pos, start});
            } else if (c == '=' && peek(1) == '>') {
                advance();
                advance();
                out.push_back({Tok::Defeasible, "=>", pos, start});
            } else if (c == '(') {
                single(Tok::LParen);
            } else if (c == ')') {
                single(Tok::RParen);
            } else if (c == ',') {
                single(Tok::Comma);
            } else if (c == '.') {
                single(Tok::Dot);
            } else if (c == ':') {
                single(Tok::Colon);
            } else if (c == '>') {
                single(Tok::Gt);
            } else if (c == '~') {
                single(Tok::Tilde);
            } else {
                diags_.push_back({Diagnostic::Kind::Lexical, pos, std::string("unexpected character '") + c + "'"});
                advance();
            }
        }
    }

private:
    char peek(std::size_t k) const { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; }

    void advance() {
        if (text_[i_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++i_;
    }

    void skip_space() {
        while (i_ < text_.size()) {
            char c = text_[i_];
            if (c == '%') {
                while (i_ < text_.size() && text_[i_] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    std::string_view text_;
    std::vector<Diagnostic>& diags_;
    std::size_t i_ = 0;
    int line_ = 1;
    int col_ = 1;
};

struct SyntaxError {
    SourcePos pos;
    std::string message;
};

class Parser {
public:
    Parser(std::vector<Token> tokens, std::vector<Diagnostic>& diags) : toks_(std::move(tokens)), diags_(diags) {}

    SourceTheory run() {
        while (cur().kind != Tok::End) {
            try {
                statement();
            } catch (const SyntaxError& e) {
                diags_.push_back({Diagnostic::Kind::Syntax, e.pos, e.message});
                while (cur().kind != Tok::End && cur().kind != Tok::Dot) ++pos_;
                if (cur().kind == Tok::Dot) ++pos_;
            }
        }
        return std::move(out_);
    }

private:
    const Token& cur() const { return toks_[pos_]; }
    const Token& ahead(std::size_t k) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& what) const {
        const Token& t = cur();
        std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
        throw SyntaxError{t.pos, what + ", found " + found};
    }

    Token expect(Tok kind, const char* what) {
        if (cur().kind != kind) fail(std::string("expected ") + what);
        return toks_[pos_++];
    }

    bool is_label(const Token& t) const { return t.kind == Tok::Ident || t.kind == Tok::Variable; }

    void statement() {
        const Token& first = cur();
        if (first.kind == Tok::Ident && first.text == "fact" && ahead(1).kind != Tok::Colon && ahead(1).kind != Tok::Gt) {
            ++pos_;
            SourcePos pos = first.pos;
            SourceLiteral lit = literal();
            expect(Tok::Dot, "'.' after fact");
            out_.facts.push_back({std::move(lit), pos});
            return;
        }
        if (!is_label(first)) fail("expected 'fact', a rule label or a superiority pair");
        Token label = toks_[pos_++];
        if (cur().kind == Tok::Gt) {
            ++pos_;
            if (!is_label(cur())) fail("superiority pair must relate two labels: expected a rule label");
            Token inferior = toks_[pos_++];
            expect(Tok::Dot, "'.' after superiority pair");
            out_.superiority.push_back({label.text, inferior.text, label.pos});
            return;
        }
        expect(Tok::Colon, "':' or '>' after label");

        SourceRule rule;
        rule.label = label.text;
        rule.pos = label.pos;
        if (!arrow_ahead()) {
            rule.body.push_back(literal());
            while (cur().kind == Tok::Comma) {
                ++pos_;
                rule.body.push_back(literal());
            }
        }
        if (!arrow_ahead()) {
            if (cur().kind == Tok::Gt) fail("superiority pair must relate two labels, not a rule body");
            fail("expected ',' or an arrow ('->', '=>', '~>')");
        }
        rule.kind = arrow();
        rule.head = literal();
        expect(Tok::Dot, "'.' after rule head");
        if (!labels_.insert(rule.label).second) {
            diags_.push_back({Diagnostic::Kind::DuplicateLabel, rule.pos, "duplicate rule label '" + rule.label + "'"});
        }
        out_.rules.push_back(std::move(rule));
    }

    // '~>' is only an arrow here; elsewhere '~' is negation.
    bool arrow_ahead() const {
        if (cur().kind == Tok::Strict || cur().kind == Tok::Defeasible) return true;
        return cur().kind == Tok::Tilde && ahead(1).kind == Tok::Gt && ahead(1).offset == cur().offset + 1;
    }

    RuleKind arrow() {
        Tok k = cur().kind;
        if (k == Tok::Strict) {
            ++pos_;
            return RuleKind::Strict;
        }
        if (k == Tok::Defeasible) {
            ++pos_;
            return RuleKind::Defeasible;
        }
        pos_ += 2;
        return RuleKind::Defeater;
    }

    SourceLiteral literal() {
        SourceLiteral lit;
        lit.pos = cur().pos;
        if (cur().kind == Tok::Tilde) {
            lit.positive = false;
            ++pos_;
        }
        if (cur().kind != Tok::Ident) fail("expected an atom (lowercase identifier)");
        lit.predicate = toks_[pos_++].text;
        if (cur().kind == Tok::LParen) {
            ++pos_;
            lit.args.push_back(term());
            while (cur().kind == Tok::Comma) {
                ++pos_;
                lit.args.push_back(term());
            }
            expect(Tok::RParen, "')' closing the argument list");
        }
        return lit;
    }

    Term term() {
        if (cur().kind == Tok::Variable) return {toks_[pos_++].text, true};
        if (cur().kind == Tok::Ident) {
            std::string c = toks_[pos_++].text;
            if (constants_.insert(c).second) out_.constants.push_back(c);
            return {std::move(c), false};
        }
        fail("expected a variable or constant");
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::vector<Diagnostic>& diags_;
    SourceTheory out_;
    std::unordered_set<std::string> labels_;
    std::unordered_set<std::string> constants_;
};

std::string instantiate(const SourceLiteral& lit, const std::unordered_map<std::string, std::string>& binding) {
    std::string out = lit.predicate;
    if (!lit.args.empty()) {
        out += '(';
        for (std::size_t i = 0; i < lit.args.size(); ++i) {
            if (i) out += ',';
            const Term& t = lit.args[i];
            out += t.variable ? binding.at(t.text) : t.text;
        }
        out += ')';
    }
    return out;
}

std::string_view arrow_text(RuleKind kind) {
    switch (kind) {
        case RuleKind::Strict: return "->";
        case RuleKind::Defeasible: return "=>";
        case RuleKind::Defeater: return "~>";
    }
    return "=>";
}

}  // namespace

SourceTheory parse(std::string_view text) {
    std::vector<Diagnostic> diags;
    Lexer lexer(text, diags);
    auto tokens = lexer.run();
    Parser parser(std::move(tokens), diags);
    SourceTheory out = parser.run();
    if (!diags.empty()) {
        std::stable_sort(diags.begin(), diags.end(), [](const Diagnostic& a, const Diagnostic& b) {
            return std::tie(a.pos.line, a.pos.column) < std::tie(b.pos.line, b.pos.column);
        });
        throw ParseError(std::move(diags));
    }
    return out;
}

GroundTheory ground(const SourceTheory& source) {
    std::vector<Diagnostic> diags;
    for (const auto& f : source.facts) {
        if (!f.literal.ground()) {
            diags.push_back({Diagnostic::Kind::Grounding, f.pos, "fact '" + f.literal.atom_text() + "' is not ground"});
        }
    }

    // Distinct variables per rule, in order of first occurrence (body, then head).
    std::vector<std::vector<std::string>> variables(source.rules.size());
    for (std::size_t i = 0; i < source.rules.size(); ++i) {
        const SourceRule& r = source.rules[i];
        auto collect = [&](const SourceLiteral& lit) {
            for (const Term& t : lit.args) {
                if (t.variable && std::find(variables[i].begin(), variables[i].end(), t.text) == variables[i].end()) {
                    variables[i].push_back(t.text);
                }
            }
        };
        for (const auto& b : r.body) collect(b);
        collect(r.head);
        if (!variables[i].empty() && source.constants.empty()) {
            diags.push_back({Diagnostic::Kind::Grounding, r.pos,
                             "rule '" + r.label + "' has variables but the theory has no constants"});
        }
    }
    if (!diags.empty()) throw ParseError(std::move(diags));

    TheoryBuilder builder;
    for (const auto& f : source.facts) {
        builder.add_fact(Literal(builder.intern_atom(f.literal.atom_text()), f.literal.positive));
    }

    GroundingMap map;
    std::unordered_map<std::string, std::vector<std::string>> instances_of;
    const auto& constants = source.constants;
    for (std::size_t i = 0; i < source.rules.size(); ++i) {
        const SourceRule& r = source.rules[i];
        const auto& vars = variables[i];
        auto make = [&](const std::string& label, const std::unordered_map<std::string, std::string>& binding) {
            std::vector<Literal> body;
            for (const auto& b : r.body) body.emplace_back(builder.intern_atom(instantiate(b, binding)), b.positive);
            Literal head(builder.intern_atom(instantiate(r.head, binding)), r.head.positive);
            builder.add_rule(label, r.kind, std::move(body), head);
            instances_of[r.label].push_back(label);
        };
        if (vars.empty()) {
            make(r.label, {});
            continue;
        }
        GroundingEntry entry{r.label, vars, {}};
        // Odometer over constants; the first variable varies slowest.
        std::vector<std::size_t> digit(vars.size(), 0);
        for (std::size_t k = 0;; ++k) {
            std::unordered_map<std::string, std::string> binding;
            std::vector<std::string> values;
            for (std::size_t v = 0; v < vars.size(); ++v) {
                binding[vars[v]] = constants[digit[v]];
                values.push_back(constants[digit[v]]);
            }
            std::string label = r.label + "#" + std::to_string(k);
            make(label, binding);
            entry.instances.emplace_back(label, std::move(values));
            std::size_t v = vars.size();
            while (v > 0 && ++digit[v - 1] == constants.size()) digit[--v] = 0;
            if (v == 0) break;
        }
        map.push_back(std::move(entry));
    }

    for (const auto& s : source.superiority) {
        auto sup = instances_of.find(s.superior);
        auto inf = instances_of.find(s.inferior);
        if (sup == instances_of.end() || inf == instances_of.end()) {
            // Left for validation to report as an unknown label.
            builder.add_superiority(s.superior, s.inferior);
            continue;
        }
        for (const auto& a : sup->second) {
            for (const auto& b : inf->second) builder.add_superiority(a, b);
        }
    }
    return {builder.freeze(), std::move(map)};
}

Theory load_theory(std::string_view text) { return ground(parse(text)).theory; }

Theory load_theory_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_theory(ss.str());
}

std::string serialize_theory(const Theory& theory) {
    std::string out;
    for (Literal f : theory.facts()) out += "fact " + theory.literal_name(f) + ".\n";
    for (const Rule& r : theory.rules()) {
        out += r.label;
        out += ':';
        for (std::size_t i = 0; i < r.body.size(); ++i) {
            out += i ? ", " : " ";
            out += theory.literal_name(r.body[i]);
        }
        out += ' ';
        out += arrow_text(r.kind);
        out += ' ';
        out += theory.literal_name(r.head);
        out += ".\n";
    }
    for (const auto& [a, b] : theory.superiority()) {
        out += theory.rule(a).label + " > " + theory.rule(b).label + ".\n";
    }
    return out;
}

std::string emit_conclusions(const Theory& theory, const ClosureSet& closure, const EmitOptions& options) {
    std::vector<Tag> tags = options.tags.empty() ? closure.tags() : options.tags;
    std::sort(tags.begin(), tags.end());

    if (options.format == OutputFormat::Json) {
        auto records = nlohmann::json::array();
        for (Tag tag : tags) {
            nlohmann::json obj;
            obj["tag"] = tag_name(tag);
            auto names = [&](Status s) {
                auto arr = nlohmann::json::array();
                for (Literal q : closure.with_status(tag, s)) arr.push_back(theory.literal_name(q));
                return arr;
            };
            obj["plus"] = names(Status::Plus);
            obj["minus"] = names(Status::Minus);
            obj["undecided"] = names(Status::Undecided);
            records.push_back(std::move(obj));
        }
        if (records.size() == 1) return records[0].dump(2) + "\n";
        return records.dump(2) + "\n";
    }

    std::string out;
    for (Tag tag : tags) {
        auto statuses = closure.statuses(tag);
        for (std::uint32_t i = 0; i < statuses.size(); ++i) {
            char mark = 0;
            if (statuses[i] == Status::Plus) mark = '+';
            else if (statuses[i] == Status::Minus) mark = '-';
            else if (options.include_undecided) mark = '?';
            if (!mark) continue;
            out += mark;
            out += tag_name(tag);
            out += ' ';
            out += theory.literal_name(Literal::from_id(i));
            out += '\n';
        }
    }
    return out;
}

}  // namespace defeasible
