#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <string>
#include <vector>

#include "vecgram/model.hpp"
#include "vecgram/parser.hpp"

using namespace vecgram;

namespace {

Model witness_model() {
  ModelConfig config;
  config.min_count = 1;
  return train_model("a b c\n\na b d", config);
}

// a&b is the only multi-token entry: every other adjacent pair occurs once,
// below min_count 2, so both bracketings of "a b c" compose to empty.
Model only_ab_model() {
  ModelConfig config;
  config.min_count = 2;
  return train_model("a b c\n\na b d\n\na b e", config);
}

Model zero_model() {
  ModelConfig config;
  config.ngram_max = 1;  // empty pair table
  return train_model("a b c d\n\nb c a d", config);
}

}  // namespace

TEST_CASE("score sums components") {
  REQUIRE(score(SimVector{}) == 0.0);
  SimVector v = SimVector::from_sorted({{1, 0.5}, {2, 0.25}});
  REQUIRE(score(v) == 0.75);
  REQUIRE(score(v, ScoreMode::kConcentration) == 0.375);
  REQUIRE(score(SimVector{}, ScoreMode::kConcentration) == 0.0);
}

TEST_CASE("two tokens have a unique tree") {
  Model m = witness_model();
  ParseResult r = parse_sentence(m, "a b");
  REQUIRE(r.bracketed() == "(a b)");
  REQUIRE(r.method == ParseMethod::kExact);
  REQUIRE(r.score == Catch::Approx(std::log2(3.0)).epsilon(1e-9));
}

TEST_CASE("the higher-scoring bracketing wins") {
  Model m = witness_model();
  // Hand derivation: ((a b) c) sums to 4 L^2, (a (b c)) to 8 L^2, L = log2 3.
  const double L = std::log2(3.0);
  ParseResult r = parse_sentence(m, "a b c");
  REQUIRE(r.bracketed() == "(a (b c))");
  REQUIRE(r.score == Catch::Approx(8 * L * L).epsilon(1e-9));
}

TEST_CASE("empty compositions fall back to the left-branching tie-break") {
  Model m = only_ab_model();
  ParseResult r = parse_sentence(m, "a b c");
  REQUIRE(r.score == 0.0);
  REQUIRE(r.bracketed() == "((a b) c)");
}

TEST_CASE("an all-zero model yields the fully left-branching tree") {
  Model m = zero_model();
  ParseResult exact = parse_exact(m, {1, 2, 3, 4});
  REQUIRE(exact.score == 0.0);
  std::vector<std::pair<int, int>> spans;
  collect_spans(*exact.tree, spans);
  REQUIRE(spans == std::vector<std::pair<int, int>>{{0, 4}, {0, 3}, {0, 2}});

  ParseResult beam = parse_beam(m, {1, 2, 3, 4}, 3);
  REQUIRE(beam.score == 0.0);
  std::vector<std::pair<int, int>> beam_spans;
  collect_spans(*beam.tree, beam_spans);
  REQUIRE(beam_spans == spans);
}

TEST_CASE("beam one on two tokens equals exact") {
  Model m = witness_model();
  std::vector<EntryId> tokens{m.token_entry("a"), m.token_entry("b")};
  ParseResult exact = parse_exact(m, tokens);
  ParseResult beam = parse_beam(m, tokens, 1);
  REQUIRE(beam.score == exact.score);
  REQUIRE(render_tree(*beam.tree, beam.words) == render_tree(*exact.tree, exact.words));
}

TEST_CASE("a wide beam reproduces the exact score") {
  // Catalan numbers: 1 1 2 5 14 42 132 429 for n = 1..8.
  const int catalan[] = {0, 1, 1, 2, 5, 14, 42, 132, 429};
  Model m = train_model(
      "the cat sees a dog\n\nthe dog sees a cat\n\nit sees a cat\n\n"
      "he sees the dog\n\nthe cat runs\n\nit runs\n\nthe dog runs\n\n"
      "a cat sees it\n\nthe big cat runs\n\na small dog waits",
      ModelConfig{3, 1, 0.01, 200, false});
  std::vector<std::string> sentences = {
      "the cat sees a dog", "it sees the cat", "a dog runs",
      "the big cat sees a dog", "he sees it", "the cat sees the small dog"};
  for (const auto& s : sentences) {
    std::vector<EntryId> tokens;
    for (const auto& w : tokenize_line(s)) tokens.push_back(m.token_entry(w));
    const int n = static_cast<int>(tokens.size());
    REQUIRE(n <= 8);
    ParseResult exact = parse_exact(m, tokens);
    ParseResult beam = parse_beam(m, tokens, catalan[n]);
    REQUIRE(beam.score == exact.score);  // exact equality, not approximate
  }
}

TEST_CASE("widening the beam never lowers the score") {
  Model m = train_model(
      "the cat sees a dog\n\nthe dog sees a cat\n\nit sees a cat\n\n"
      "he sees the dog\n\nthe cat runs\n\nit runs",
      ModelConfig{3, 1, 0.01, 200, false});
  std::vector<EntryId> tokens;
  for (const auto& w : tokenize_line("the cat sees a dog")) tokens.push_back(m.token_entry(w));
  double last = -1.0;
  for (int width : {1, 2, 4, 8, 16}) {
    double s = parse_beam(m, tokens, width).score;
    REQUIRE(s >= last);
    last = s;
  }
}

TEST_CASE("parsing is deterministic") {
  Model m = witness_model();
  ParseResult r1 = parse_sentence(m, "a b c");
  ParseResult r2 = parse_sentence(m, "a b c");
  REQUIRE(r1.bracketed() == r2.bracketed());
  REQUIRE(r1.score == r2.score);  // bit-identical
}

TEST_CASE("unknown words become UNK leaves but keep their surface form") {
  Model m = witness_model();
  ParseResult r = parse_sentence(m, "a zzz c");
  REQUIRE(r.bracketed() == "((a zzz) c)");  // all-zero scores, left tie-break
  REQUIRE(r.score == 0.0);
  REQUIRE(r.tree->left->left->entry != kNoEntry);
  REQUIRE(r.tree->left->right->entry == m.vocab.unk());
}

TEST_CASE("single-word sentences produce a single leaf") {
  Model m = witness_model();
  ParseResult r = parse_sentence(m, "a");
  REQUIRE(r.tree->is_leaf());
  REQUIRE(r.bracketed() == "a");
  REQUIRE(r.score == 1.0);  // the class vector {a: 1}
}

TEST_CASE("empty sentences are rejected") {
  Model m = witness_model();
  REQUIRE_THROWS_AS(parse_sentence(m, ""), EmptyInputError);
  REQUIRE_THROWS_AS(parse_sentence(m, "   "), EmptyInputError);
  REQUIRE_THROWS_AS(parse_exact(m, {}), EmptyInputError);
}

TEST_CASE("long sentences dispatch to the beam") {
  Model m = witness_model();
  ParseOptions options;
  options.max_exact_len = 10;
  ParseResult r = parse_sentence(m, "a b c a b c a b c a b c", options);
  REQUIRE(r.words.size() == 12);
  REQUIRE(r.method == ParseMethod::kBeam);

  ParseResult short_r = parse_sentence(m, "a b c", options);
  REQUIRE(short_r.method == ParseMethod::kExact);
}

TEST_CASE("a thirty-token beam parse finishes quickly") {
  Model m = witness_model();
  std::string line;
  for (int i = 0; i < 10; ++i) line += "a b c ";
  ParseOptions options;
  options.beam_width = 8;
  ParseResult r = parse_sentence(m, line, options);
  REQUIRE(r.words.size() == 30);
  REQUIRE(r.method == ParseMethod::kBeam);
}

TEST_CASE("doubling all pair weights keeps the chosen tree") {
  Model m = witness_model();
  ParseResult before = parse_sentence(m, "a b c");
  Model scaled = m;
  scaled.pairs.scale_mi(2.0);
  ParseResult after = parse_sentence(scaled, "a b c");
  REQUIRE(after.bracketed() == before.bracketed());
  // n - 1 = 2 internal nodes: the score scales by exactly 2^2.
  REQUIRE(after.score == Catch::Approx(4.0 * before.score).epsilon(1e-12));
}

TEST_CASE("concentration mode scores sum over component count") {
  Model m = witness_model();
  ParseOptions options;
  options.score_mode = ScoreMode::kConcentration;
  ParseResult r = parse_sentence(m, "a b c", options);
  REQUIRE(r.score > 0.0);
  REQUIRE(r.score == score(r.vector, ScoreMode::kConcentration));
}
