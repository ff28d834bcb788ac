#include "support.hpp"

#include "defeasible/engine.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

using namespace defeasible;
using testing_support::corpus;
using testing_support::lit;

namespace {

std::string read_corpus(const std::string& name) {
    std::ifstream in(std::string(CORPUS_DIR) + "/" + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const Diagnostic& only_diagnostic(std::string_view text) {
    static std::vector<Diagnostic> keep;
    try {
        parse(text);
    } catch (const ParseError& e) {
        keep = e.diagnostics();
        if (keep.size() != 1) throw std::logic_error("expected exactly one diagnostic");
        return keep[0];
    }
    throw std::logic_error("expected a parse error");
}

}  // namespace

TEST(Parse, TweetyCounts) {
    const SourceTheory src = parse(read_corpus("tweety.dl"));
    EXPECT_EQ(src.rules.size(), 4u);
    EXPECT_EQ(src.facts.size(), 3u);
    EXPECT_EQ(src.superiority.size(), 1u);
    EXPECT_EQ(src.rules[3].kind, RuleKind::Defeater);
    EXPECT_EQ(src.rules[2].kind, RuleKind::Strict);
    EXPECT_FALSE(src.rules[1].head.positive);
}

TEST(Parse, EmptyBodyDefeasibleRule) {
    const SourceTheory src = parse("r: => q.");
    ASSERT_EQ(src.rules.size(), 1u);
    EXPECT_EQ(src.rules[0].label, "r");
    EXPECT_EQ(src.rules[0].kind, RuleKind::Defeasible);
    EXPECT_TRUE(src.rules[0].body.empty());
    EXPECT_EQ(src.rules[0].head.atom_text(), "q");
}

TEST(Parse, SuperiorityMustRelateLabels) {
    const Diagnostic& d = only_diagnostic("r1: p > r2.");
    EXPECT_EQ(d.kind, Diagnostic::Kind::Syntax);
    EXPECT_NE(d.message.find("superiority pair must relate two labels"), std::string::npos);
    EXPECT_EQ(d.pos.line, 1);
    EXPECT_EQ(d.pos.column, 7);
}

TEST(Parse, LexicalErrorCarriesPosition) {
    const Diagnostic& d = only_diagnostic("r: => q.\ns: => $p.");
    EXPECT_EQ(d.kind, Diagnostic::Kind::Lexical);
    EXPECT_EQ(d.pos.line, 2);
    EXPECT_EQ(d.pos.column, 7);
}

TEST(Parse, DuplicateLabel) {
    const Diagnostic& d = only_diagnostic("r: => q.\nr: => p.");
    EXPECT_EQ(d.kind, Diagnostic::Kind::DuplicateLabel);
    EXPECT_EQ(d.pos.line, 2);
}

TEST(Parse, RecoversAfterErrors) {
    try {
        parse("r: p q.\ns: => .\nt: => q.");
        FAIL() << "expected errors";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.diagnostics().size(), 2u);
    }
}

TEST(Parse, DefeaterArrowOnlyInArrowPosition) {
    const SourceTheory src = parse("r: ~p ~> ~q.");
    ASSERT_EQ(src.rules.size(), 1u);
    EXPECT_EQ(src.rules[0].kind, RuleKind::Defeater);
    EXPECT_FALSE(src.rules[0].body[0].positive);
    EXPECT_FALSE(src.rules[0].head.positive);
}

TEST(Parse, CommentsAreIgnored) {
    const SourceTheory src = parse("% nothing\nr: => q. % trailing\n");
    EXPECT_EQ(src.rules.size(), 1u);
}

TEST(Ground, TweetyInstances) {
    const GroundTheory g = ground(parse(read_corpus("tweety.dl")));
    EXPECT_EQ(parse(read_corpus("tweety.dl")).constants, (std::vector<std::string>{"tweety", "freddie"}));
    EXPECT_EQ(g.theory.rules().size(), 8u);
    ASSERT_EQ(g.grounding.size(), 4u);
    for (const auto& entry : g.grounding) {
        EXPECT_EQ(entry.variables, std::vector<std::string>{"X"});
        ASSERT_EQ(entry.instances.size(), 2u);
        EXPECT_EQ(entry.instances[0].first, entry.label + "#0");
        EXPECT_EQ(entry.instances[1].second, std::vector<std::string>{"freddie"});
    }
}

TEST(Ground, SuperiorityLiftsToAllInstancePairs) {
    const Theory t = corpus("tweety.dl");
    EXPECT_EQ(t.superiority().size(), 4u);
    for (const char* a : {"r2#0", "r2#1"}) {
        for (const char* b : {"r1#0", "r1#1"}) EXPECT_TRUE(t.superior(*t.find_rule(a), *t.find_rule(b)));
    }
}

TEST(Ground, VariableFreeSourceIsIdentity) {
    const GroundTheory g = ground(parse(read_corpus("team_defeat.dl")));
    EXPECT_TRUE(g.grounding.empty());
    EXPECT_EQ(g.theory.rules().size(), 4u);
    EXPECT_EQ(g.theory.rule(0).label, "r");
    EXPECT_EQ(g.theory.superiority().size(), 2u);
}

TEST(Ground, InstanceCountIsConstantsToTheVariables) {
    const GroundTheory g = ground(parse("fact e(a, b).\nfact n(c).\nr: e(X, Y) => p(Y, X).\n"));
    ASSERT_EQ(g.grounding.size(), 1u);
    EXPECT_EQ(g.grounding[0].instances.size(), 9u);
    EXPECT_EQ(g.grounding[0].instances[1].second, (std::vector<std::string>{"a", "b"}));
}

TEST(Ground, VariablesWithoutConstantsRejected) {
    try {
        ground(parse("r: p(X) => q(X)."));
        FAIL() << "expected a grounding error";
    } catch (const ParseError& e) {
        ASSERT_EQ(e.diagnostics().size(), 1u);
        EXPECT_EQ(e.diagnostics()[0].kind, Diagnostic::Kind::Grounding);
    }
}

TEST(Ground, NonGroundFactRejected) {
    try {
        ground(parse("fact p(X).\nr: => q(a)."));
        FAIL() << "expected a grounding error";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.diagnostics()[0].kind, Diagnostic::Kind::Grounding);
    }
}

TEST(Ground, UnknownSuperiorityLabelIsATheoryError) {
    EXPECT_THROW(load_theory("r: => q.\nrX > r."), TheoryError);
}

TEST(Serialize, RoundTripsCorpus) {
    for (const char* name : {"tweety.dl", "team_defeat.dl", "ambiguity.dl", "selfloop.dl", "confloop.dl", "cascade.dl",
                             "lambda_gap.dl", "masked_conflict_2.dl", "restructure_b.dl"}) {
        const Theory t = corpus(name);
        const std::string text = serialize_theory(t);
        const Theory back = load_theory(text);
        EXPECT_EQ(serialize_theory(back), text) << name;
        EXPECT_TRUE(back == t) << name;
    }
}

TEST(Serialize, EmptyTheoryIsEmptyDocument) { EXPECT_EQ(serialize_theory(load_theory("")), ""); }

TEST(Serialize, SelfloopHasTwoRulesAndNoSuperiority) {
    EXPECT_EQ(serialize_theory(corpus("selfloop.dl")), "r: q -> q.\ns: => q.\n");
}

TEST(Emit, TweetyDeltaPositives) {
    const Theory t = corpus("tweety.dl");
    const std::string text = emit_conclusions(t, delta_closure(t));
    for (const char* line : {"+delta penguin(tweety)\n", "+delta bird(freddie)\n", "+delta injured(freddie)\n",
                             "+delta bird(tweety)\n"}) {
        EXPECT_NE(text.find(line), std::string::npos) << line;
    }
    EXPECT_EQ(text.find("+delta fly"), std::string::npos);
}

TEST(Emit, EmptyTheoryHasNoRecords) {
    const Theory t = load_theory("");
    EXPECT_EQ(emit_conclusions(t, delta_closure(t)), "");
}

TEST(Emit, NothingProvableMeansAllMinus) {
    const Theory t = load_theory("r: p => q.");
    EXPECT_EQ(emit_conclusions(t, delta_closure(t)), "-delta p\n-delta ~p\n-delta q\n-delta ~q\n");
}

TEST(Emit, UndecidedListedOnRequest) {
    const Theory t = corpus("selfloop.dl");
    EmitOptions opts;
    opts.include_undecided = true;
    EXPECT_EQ(emit_conclusions(t, delta_closure(t), opts), "?delta q\n-delta ~q\n");
    EXPECT_EQ(emit_conclusions(t, delta_closure(t)), "-delta ~q\n");
}

TEST(Emit, JsonSchema) {
    const Theory t = corpus("tweety.dl");
    EmitOptions opts;
    opts.format = OutputFormat::Json;
    opts.include_undecided = true;
    opts.tags = {Tag::PartialPar};
    const auto j = nlohmann::json::parse(emit_conclusions(t, compute_closure(t, Tag::PartialPar), opts));
    EXPECT_EQ(j["tag"], "partial_par");
    EXPECT_EQ(j["plus"].size(), 5u);
    EXPECT_EQ(j["plus"].size() + j["minus"].size() + j["undecided"].size(), t.literal_count());
    EXPECT_NE(std::find(j["plus"].begin(), j["plus"].end(), "~fly(tweety)"), j["plus"].end());
}

TEST(Emit, JsonSeveralTagsIsAnArray) {
    const Theory t = corpus("ambiguity.dl");
    EmitOptions opts;
    opts.format = OutputFormat::Json;
    const auto j = nlohmann::json::parse(emit_conclusions(t, compute_closure(t, Tag::DeltaAp), opts));
    ASSERT_TRUE(j.is_array());
    EXPECT_EQ(j.size(), 3u);
}
