#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "vecgram/context.hpp"
#include "vecgram/sim_vector.hpp"
#include "vecgram/vocab.hpp"

namespace vecgram {

// Lin similarity: 2 * I(shared contexts) / (I(contexts of a) + I(contexts
// of b)), over support sets. Shared information is accumulated in ascending
// feature order, the same order entry_information uses, so sim(a,a) == 1
// and the [0,1] range hold exactly.
inline double lin_similarity(const ContextStats& stats, EntryId a, EntryId b) {
  auto ca = stats.features(a);
  auto cb = stats.features(b);
  if (ca.empty()) throw NoContextsError("entry " + std::to_string(a));
  if (cb.empty()) throw NoContextsError("entry " + std::to_string(b));

  double denom = stats.entry_information(a) + stats.entry_information(b);
  if (denom == 0.0) return 0.0;  // only probability-1 features on both sides

  double shared = 0.0;
  std::size_t i = 0, j = 0;
  while (i < ca.size() && j < cb.size()) {
    if (ca[i].first < cb[j].first) {
      ++i;
    } else if (cb[j].first < ca[i].first) {
      ++j;
    } else {
      shared += stats.feature_information(ca[i].first);
      ++i;
      ++j;
    }
  }
  if (shared == 0.0) return 0.0;
  return 2.0 * shared / denom;
}

// The sparse class vector of w: every entry with similarity above the
// threshold, capped at top_k components. The self component is 1 and always
// survives the cap.
inline SimVector class_vector(const ContextStats& stats, const Vocabulary& vocab,
                              EntryId w, double threshold_c, int top_k) {
  if (!(threshold_c >= 0.0 && threshold_c < 1.0))
    throw std::invalid_argument("threshold must be in [0,1)");
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
  if (w == kNoEntry || w >= vocab.id_bound())
    throw NoContextsError("entry " + std::to_string(w));
  if (!stats.has_contexts(w)) throw NoContextsError("entry " + std::to_string(w));

  // Only entries sharing at least one feature can score above zero.
  std::vector<EntryId> candidates;
  for (const auto& [packed, count] : stats.features(w)) {
    auto shared = stats.entries_with(packed);
    candidates.insert(candidates.end(), shared.begin(), shared.end());
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  std::vector<SimVector::Component> items;
  items.reserve(candidates.size());
  items.emplace_back(w, 1.0);
  for (EntryId other : candidates) {
    if (other == w) continue;
    double sim = lin_similarity(stats, w, other);
    if (sim > threshold_c) items.emplace_back(other, sim);
  }
  return SimVector::top_k(std::move(items), static_cast<std::size_t>(top_k), w);
}

// One class vector per entry with observed contexts, indexed by entry id.
// Entries without contexts stay empty.
inline std::vector<SimVector> build_all_class_vectors(const ContextStats& stats,
                                                      const Vocabulary& vocab,
                                                      double threshold_c, int top_k) {
  std::vector<SimVector> vectors(vocab.id_bound());
  for (EntryId e = 1; e < vocab.id_bound(); ++e) {
    if (!stats.has_contexts(e)) continue;
    vectors[e] = class_vector(stats, vocab, e, threshold_c, top_k);
  }
  return vectors;
}

}  // namespace vecgram
