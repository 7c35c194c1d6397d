#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "vecgram/eval.hpp"
#include "vecgram/pcfg.hpp"

using namespace vecgram;

namespace {

const char* kTinyGrammar =
    "S -> NP VP\n"
    "NP -> det n 0.6\n"
    "NP -> pro 0.4\n"
    "VP -> v NP 0.5\n"
    "VP -> v 0.5\n"
    "det -> the\n"
    "n -> cat 0.5\n"
    "n -> dog 0.5\n"
    "pro -> it\n"
    "v -> sees 0.5\n"
    "v -> runs 0.5\n";

}  // namespace

TEST_CASE("grammar parsing reads rules, weights and comments") {
  Grammar g = Grammar::parse("# header\nS -> a b 2\nS -> a 1\n");
  REQUIRE(g.is_nonterminal(g.start()));
  REQUIRE(g.productions(g.start()).size() == 2);
  REQUIRE(g.productions(g.start())[0].weight == 2.0);
  REQUIRE(g.productions(g.start())[0].rhs.size() == 2);
}

TEST_CASE("malformed grammars are rejected") {
  REQUIRE_THROWS_AS(Grammar::parse(""), GrammarError);
  REQUIRE_THROWS_AS(Grammar::parse("S a b\n"), GrammarError);
  REQUIRE_THROWS_AS(Grammar::parse("S -> a -1\n"), GrammarError);
  REQUIRE_THROWS_AS(Grammar::parse("S -> S a\n"), GrammarError);   // never terminates
  REQUIRE_THROWS_AS(Grammar::parse("S -> Big X\nX -> a\n"), GrammarError);  // 'Big' terminal
}

TEST_CASE("generation is deterministic given the seed") {
  Grammar g = Grammar::parse(kTinyGrammar);
  SentenceGenerator g1(g, 42), g2(g, 42);
  for (int i = 0; i < 20; ++i) {
    GeneratedSentence a = g1.next();
    GeneratedSentence b = g2.next();
    REQUIRE(a.words == b.words);
    REQUIRE(a.spans == b.spans);
  }
}

TEST_CASE("a single-production grammar generates identical sentences") {
  Grammar g = Grammar::parse("S -> a b c\n");
  SentenceGenerator gen(g, 1);
  for (int i = 0; i < 5; ++i)
    REQUIRE(gen.next().words == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("recursive grammars terminate with bounded sentences") {
  // Supercritical: expected branching factor ~1.8, so only the depth and
  // size limits keep generation finite.
  Grammar g = Grammar::parse("S -> S S 10\nS -> a 1\n");
  SentenceGenerator gen(g, 9);
  for (int i = 0; i < 20; ++i) {
    GeneratedSentence s = gen.next();
    REQUIRE(!s.words.empty());
    REQUIRE(s.words.size() < 8192);
  }
}

TEST_CASE("scoring spans drop unary brackets and the whole sentence") {
  std::vector<Span> raw = {{0, 5}, {0, 2}, {2, 5}, {3, 5}, {3, 4}, {1, 2}};
  std::vector<Span> kept = scoring_spans(raw, 5);
  REQUIRE(kept == std::vector<Span>{{0, 2}, {2, 5}, {3, 5}});
}

TEST_CASE("identical trees score a perfect f1") {
  std::vector<std::vector<Span>> trees = {{{0, 2}, {2, 5}}, {{1, 3}}};
  BracketScore s = bracket_f1(trees, trees);
  REQUIRE(s.precision == 1.0);
  REQUIRE(s.recall == 1.0);
  REQUIRE(s.f1 == 1.0);
  REQUIRE(s.sentence_count == 2);
}

TEST_CASE("left versus right branching over four tokens has no overlap") {
  std::vector<std::vector<Span>> left = {left_branching_spans(4)};
  std::vector<std::vector<Span>> right = {right_branching_spans(4)};
  REQUIRE(left[0] == std::vector<Span>{{0, 2}, {0, 3}});
  REQUIRE(right[0] == std::vector<Span>{{1, 4}, {2, 4}});
  BracketScore s = bracket_f1(left, right);
  REQUIRE(s.precision == 0.0);
  REQUIRE(s.recall == 0.0);
  REQUIRE(s.f1 == 0.0);
}

TEST_CASE("a hand-counted five-token pair") {
  // predicted ((a b)((c d) e)): spans (0,2) (2,5) (2,4)
  // gold      ((a b) (c (d e))): spans (0,2) (2,5) (3,5)
  std::vector<std::vector<Span>> predicted = {{{0, 2}, {2, 4}, {2, 5}}};
  std::vector<std::vector<Span>> gold = {{{0, 2}, {2, 5}, {3, 5}}};
  BracketScore s = bracket_f1(predicted, gold);
  REQUIRE(s.precision == Catch::Approx(2.0 / 3.0).margin(1e-12));
  REQUIRE(s.recall == Catch::Approx(2.0 / 3.0).margin(1e-12));
  REQUIRE(s.f1 == Catch::Approx(2.0 / 3.0).margin(1e-12));
}

TEST_CASE("precision and recall swap when the sides swap") {
  std::vector<std::vector<Span>> a = {{{0, 2}, {2, 4}, {2, 5}}};
  std::vector<std::vector<Span>> b = {{{0, 2}}};
  BracketScore ab = bracket_f1(a, b);
  BracketScore ba = bracket_f1(b, a);
  REQUIRE(ab.precision == ba.recall);
  REQUIRE(ab.recall == ba.precision);
  REQUIRE(ab.f1 == ba.f1);
}

TEST_CASE("mismatched list lengths are rejected") {
  std::vector<std::vector<Span>> one = {{{0, 2}}};
  std::vector<std::vector<Span>> two = {{{0, 2}}, {{1, 3}}};
  REQUIRE_THROWS_AS(bracket_f1(one, two), std::invalid_argument);
}

TEST_CASE("run_evaluation produces a coherent report") {
  Grammar g = Grammar::parse(kTinyGrammar);
  EvalOptions options;
  options.train_sentences = 60;
  options.test_sentences = 20;
  options.seed = 5;
  options.model_config.min_count = 1;
  EvalReport report = run_evaluation(g, options);

  REQUIRE(report.parser.sentence_count == 20);
  for (const BracketScore* s :
       {&report.parser, &report.left_baseline, &report.right_baseline}) {
    REQUIRE(s->precision >= 0.0);
    REQUIRE(s->precision <= 1.0);
    REQUIRE(s->recall >= 0.0);
    REQUIRE(s->recall <= 1.0);
    REQUIRE(s->f1 >= 0.0);
    REQUIRE(s->f1 <= 1.0);
  }

  EvalReport again = run_evaluation(g, options);
  REQUIRE(again.parser.f1 == report.parser.f1);  // fully deterministic
}
