#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "vecgram/compose.hpp"
#include "vecgram/corpus.hpp"
#include "vecgram/errors.hpp"
#include "vecgram/model.hpp"
#include "vecgram/parse_tree.hpp"

namespace vecgram {

enum class ScoreMode { kSum, kConcentration };
enum class ParseMethod { kExact, kBeam };

struct ParseOptions {
  int beam_width = 10;
  int max_exact_len = 10;  // Catalan(9) = 4862 trees
  ScoreMode score_mode = ScoreMode::kSum;
  TokenizerConfig tokenizer;
};

// Sum of all components; "concentration" divides by the component count.
inline double score(const SimVector& v, ScoreMode mode = ScoreMode::kSum) {
  if (mode == ScoreMode::kConcentration)
    return v.empty() ? 0.0 : v.sum() / static_cast<double>(v.size());
  return v.sum();
}

struct ParseResult {
  ParseNodePtr tree;
  double score = 0.0;
  SimVector vector;
  ParseMethod method = ParseMethod::kExact;
  std::vector<std::string> words;

  std::string bracketed() const { return render_tree(*tree, words); }
};

namespace detail {

// Total order on same-span candidates: higher score first, then the
// left-branching shape preference. Exact and beam search share it.
inline bool candidate_better(const ParseNodePtr& a, const ParseNodePtr& b) {
  if (a->score != b->score) return a->score > b->score;
  return shape_prefers(*a, *b);
}

inline std::vector<std::string> entry_words(const Model& model,
                                            const std::vector<EntryId>& tokens) {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (EntryId e : tokens) words.push_back(model.vocab.canonical(e));
  return words;
}

inline ParseNodePtr evaluated_leaf(const Model& model, int pos, EntryId entry,
                                   ScoreMode mode) {
  ParseNodePtr leaf = make_leaf(pos, entry);
  evaluate_tree(model, *leaf);
  leaf->score = score(leaf->vector, mode);
  return leaf;
}

inline ParseNodePtr evaluated_node(const Model& model, const ParseNodePtr& l,
                                   const ParseNodePtr& r, ScoreMode mode) {
  ParseNodePtr node = make_node(l, r);
  node->vector = compose(model, l->vector, r->vector);
  node->score = score(node->vector, mode);
  node->evaluated = true;
  return node;
}

inline ParseResult single_leaf_result(const Model& model, const std::vector<EntryId>& tokens,
                                      ScoreMode mode, ParseMethod method) {
  ParseNodePtr leaf = evaluated_leaf(model, 0, tokens[0], mode);
  return ParseResult{leaf, leaf->score, leaf->vector, method, entry_words(model, tokens)};
}

}  // namespace detail

// Evaluates every binary bracketing and returns the best-scoring tree.
// Cost grows with Catalan(n-1); callers dispatch long sentences to the beam.
inline ParseResult parse_exact(const Model& model, const std::vector<EntryId>& tokens,
                               ScoreMode mode = ScoreMode::kSum) {
  const std::size_t n = tokens.size();
  if (n == 0) throw EmptyInputError();
  if (n == 1) return detail::single_leaf_result(model, tokens, mode, ParseMethod::kExact);

  // cells[len-1][start] lists every tree over [start, start+len).
  std::vector<std::vector<std::vector<ParseNodePtr>>> cells(n);
  cells[0].resize(n);
  for (std::size_t i = 0; i < n; ++i)
    cells[0][i].push_back(detail::evaluated_leaf(model, static_cast<int>(i), tokens[i], mode));

  for (std::size_t len = 2; len <= n; ++len) {
    cells[len - 1].resize(n - len + 1);
    for (std::size_t start = 0; start + len <= n; ++start) {
      auto& out = cells[len - 1][start];
      for (std::size_t left_len = 1; left_len < len; ++left_len) {
        for (const auto& l : cells[left_len - 1][start])
          for (const auto& r : cells[len - left_len - 1][start + left_len])
            out.push_back(detail::evaluated_node(model, l, r, mode));
      }
    }
  }

  const auto& roots = cells[n - 1][0];
  ParseNodePtr best = roots.front();
  for (const auto& candidate : roots)
    if (detail::candidate_better(candidate, best)) best = candidate;
  return ParseResult{best, best->score, best->vector, ParseMethod::kExact,
                     detail::entry_words(model, tokens)};
}

// CKY-style chart keeping the top beam_width candidates per span. Inexact:
// a parent's vector depends on whole child vectors, not just child scores,
// so a pruned child may have been part of the true optimum.
inline ParseResult parse_beam(const Model& model, const std::vector<EntryId>& tokens,
                              int beam_width, ScoreMode mode = ScoreMode::kSum) {
  const std::size_t n = tokens.size();
  if (n == 0) throw EmptyInputError();
  if (beam_width < 1) throw std::invalid_argument("beam_width must be >= 1");
  if (n == 1) return detail::single_leaf_result(model, tokens, mode, ParseMethod::kBeam);

  const std::size_t width = static_cast<std::size_t>(beam_width);
  std::vector<std::vector<std::vector<ParseNodePtr>>> cells(n);
  cells[0].resize(n);
  for (std::size_t i = 0; i < n; ++i)
    cells[0][i].push_back(detail::evaluated_leaf(model, static_cast<int>(i), tokens[i], mode));

  for (std::size_t len = 2; len <= n; ++len) {
    cells[len - 1].resize(n - len + 1);
    for (std::size_t start = 0; start + len <= n; ++start) {
      std::vector<ParseNodePtr> pool;
      for (std::size_t left_len = 1; left_len < len; ++left_len) {
        for (const auto& l : cells[left_len - 1][start])
          for (const auto& r : cells[len - left_len - 1][start + left_len])
            pool.push_back(detail::evaluated_node(model, l, r, mode));
      }
      std::sort(pool.begin(), pool.end(), detail::candidate_better);
      if (pool.size() > width) pool.resize(width);
      cells[len - 1][start] = std::move(pool);
    }
  }

  const ParseNodePtr& best = cells[n - 1][0].front();
  return ParseResult{best, best->score, best->vector, ParseMethod::kBeam,
                     detail::entry_words(model, tokens)};
}

// Tokenizes one line as a single sentence, maps words to entries (unknown
// words become UNK leaves) and dispatches on length.
inline ParseResult parse_sentence(const Model& model, const std::string& raw,
                                  const ParseOptions& options = {}) {
  std::vector<std::string> words = tokenize_line(raw, options.tokenizer);
  if (words.empty()) throw EmptyInputError();

  std::vector<EntryId> tokens;
  tokens.reserve(words.size());
  for (const auto& w : words) tokens.push_back(model.token_entry(w));

  ParseResult result =
      tokens.size() <= static_cast<std::size_t>(options.max_exact_len)
          ? parse_exact(model, tokens, options.score_mode)
          : parse_beam(model, tokens, options.beam_width, options.score_mode);
  result.words = std::move(words);  // surface forms, not "<unk>"
  return result;
}

}  // namespace vecgram
