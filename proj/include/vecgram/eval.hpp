#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "vecgram/model.hpp"
#include "vecgram/parse_tree.hpp"
#include "vecgram/parser.hpp"
#include "vecgram/pcfg.hpp"

namespace vecgram {

using Span = std::pair<int, int>;

// Brackets that actually count: length >= 2, excluding the whole-sentence
// span (always correct, so scoring it would only inflate the numbers).
inline std::vector<Span> scoring_spans(std::vector<Span> spans, int n) {
  std::erase_if(spans, [n](const Span& s) {
    return s.second - s.first < 2 || (s.first == 0 && s.second == n);
  });
  std::sort(spans.begin(), spans.end());
  return spans;
}

inline std::vector<Span> tree_scoring_spans(const ParseNode& tree, int n) {
  std::vector<Span> spans;
  collect_spans(tree, spans);
  return scoring_spans(std::move(spans), n);
}

inline std::vector<Span> left_branching_spans(int n) {
  std::vector<Span> spans;
  for (int end = 2; end < n; ++end) spans.emplace_back(0, end);
  return spans;
}

inline std::vector<Span> right_branching_spans(int n) {
  std::vector<Span> spans;
  for (int start = n - 2; start >= 1; --start) spans.emplace_back(start, n);
  std::sort(spans.begin(), spans.end());
  return spans;
}

struct BracketScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::size_t sentence_count = 0;
};

// Micro-averaged unlabeled bracket counting over pre-filtered, sorted span
// multisets (one list per sentence).
inline BracketScore bracket_f1(const std::vector<std::vector<Span>>& predicted,
                               const std::vector<std::vector<Span>>& gold) {
  if (predicted.size() != gold.size())
    throw std::invalid_argument("length mismatch: " + std::to_string(predicted.size()) +
                                " predicted vs " + std::to_string(gold.size()) + " gold");
  std::size_t matched = 0, pred_total = 0, gold_total = 0;
  for (std::size_t s = 0; s < predicted.size(); ++s) {
    const auto& p = predicted[s];
    const auto& g = gold[s];
    pred_total += p.size();
    gold_total += g.size();
    std::size_t i = 0, j = 0;
    while (i < p.size() && j < g.size()) {
      if (p[i] < g[j]) {
        ++i;
      } else if (g[j] < p[i]) {
        ++j;
      } else {
        ++matched;
        ++i;
        ++j;
      }
    }
  }
  BracketScore score;
  score.sentence_count = predicted.size();
  score.precision = pred_total ? static_cast<double>(matched) / static_cast<double>(pred_total) : 0.0;
  score.recall = gold_total ? static_cast<double>(matched) / static_cast<double>(gold_total) : 0.0;
  if (score.precision > 0.0 && score.recall > 0.0)
    score.f1 = 2.0 * score.precision * score.recall / (score.precision + score.recall);
  return score;
}

struct EvalOptions {
  int train_sentences = 1000;
  int test_sentences = 200;
  std::uint64_t seed = 42;
  ModelConfig model_config;
  ParseOptions parse_options;
};

struct EvalReport {
  BracketScore parser;
  BracketScore left_baseline;
  BracketScore right_baseline;
};

// Trains on sentences drawn from the grammar, parses the next test_sentences
// draws held out from training, and scores against the generating trees.
inline EvalReport run_evaluation(const Grammar& grammar, const EvalOptions& options) {
  SentenceGenerator gen(grammar, options.seed);

  std::string train_text;
  for (int s = 0; s < options.train_sentences; ++s) {
    GeneratedSentence sentence = gen.next();
    for (std::size_t w = 0; w < sentence.words.size(); ++w) {
      if (w) train_text.push_back(' ');
      train_text += sentence.words[w];
    }
    train_text += "\n\n";
  }
  Model model = train_model(train_text, options.model_config);

  std::vector<std::vector<Span>> predicted, gold, left, right;
  for (int s = 0; s < options.test_sentences; ++s) {
    GeneratedSentence sentence = gen.next();
    const int n = static_cast<int>(sentence.words.size());
    std::string line;
    for (std::size_t w = 0; w < sentence.words.size(); ++w) {
      if (w) line.push_back(' ');
      line += sentence.words[w];
    }
    ParseResult result = parse_sentence(model, line, options.parse_options);
    predicted.push_back(tree_scoring_spans(*result.tree, n));
    gold.push_back(scoring_spans(sentence.spans, n));
    left.push_back(left_branching_spans(n));
    right.push_back(right_branching_spans(n));
  }

  EvalReport report;
  report.parser = bracket_f1(predicted, gold);
  report.left_baseline = bracket_f1(left, gold);
  report.right_baseline = bracket_f1(right, gold);
  return report;
}

}  // namespace vecgram
