#pragma once

#include <map>
#include <utility>
#include <vector>

#include "vecgram/model.hpp"
#include "vecgram/parse_tree.hpp"
#include "vecgram/sim_vector.hpp"

namespace vecgram {

// Components smaller than this fraction of the vector's largest component
// are dropped after composition. The cutoff is relative so that uniformly
// rescaling the pair weights never changes which components survive.
inline constexpr double kComposePruneRel = 1e-12;

// The substitution product: every pair (i, j) of operand components whose
// entries were observed to occur together contributes its weight times the
// class vector of the observed combination. Pairs are visited in ascending
// (i, j) order so the floating-point sums are reproducible.
inline SimVector compose(const Model& model, const SimVector& v1, const SimVector& v2) {
  std::map<EntryId, double> acc;
  auto v2c = v2.components();
  for (const auto& [i, s1] : v1.components()) {
    auto arcs = model.pairs.arcs(i);
    std::size_t p = 0;
    for (const auto& arc : arcs) {
      while (p < v2c.size() && v2c[p].first < arc.right) ++p;
      if (p == v2c.size()) break;
      if (v2c[p].first != arc.right) continue;
      const double contribution = arc.mi * s1 * v2c[p].second;
      for (const auto& [k, sim] : model.class_vectors[arc.target].components())
        acc[k] += contribution * sim;
    }
  }
  if (acc.empty()) return {};

  double max_score = 0.0;
  for (const auto& [k, score] : acc) max_score = std::max(max_score, score);
  if (max_score <= 0.0) return {};

  std::vector<SimVector::Component> items;
  items.reserve(acc.size());
  const double cutoff = max_score * kComposePruneRel;
  for (const auto& [k, score] : acc)
    if (score >= cutoff) items.emplace_back(k, score);

  SimVector out = SimVector::top_k(std::move(items), static_cast<std::size_t>(model.config.top_k));
  if (model.config.normalize_composed && !out.empty()) {
    const double total = out.sum();
    std::vector<SimVector::Component> scaled(out.components().begin(), out.components().end());
    for (auto& [k, score] : scaled) score /= total;
    out = SimVector::from_sorted(std::move(scaled));
  }
  return out;
}

// Recursive evaluation with per-node memoization. Leaves use the stored
// class vectors; unknown leaves propagate OutOfVocabularyError.
inline const SimVector& evaluate_tree(const Model& model, ParseNode& node) {
  if (node.evaluated) return node.vector;
  if (node.is_leaf()) {
    node.vector = model.leaf_vector(node.entry);
  } else {
    const SimVector& lv = evaluate_tree(model, *node.left);
    const SimVector& rv = evaluate_tree(model, *node.right);
    node.vector = compose(model, lv, rv);
  }
  node.score = node.vector.sum();
  node.evaluated = true;
  return node.vector;
}

}  // namespace vecgram
