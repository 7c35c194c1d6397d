#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "vecgram/vocab.hpp"

namespace vecgram {

struct PairLookup {
  EntryId entry = kNoEntry;
  double mi = 0.0;
};

// The observed-pair map: (i, j) -> entry for their concatenation, weighted
// by clamped pointwise mutual information. Absent pairs read as (0, 0).
class PairTable {
 public:
  struct Arc {
    EntryId right = kNoEntry;
    EntryId target = kNoEntry;
    double mi = 0.0;
  };

  void insert(EntryId left, EntryId right, EntryId target, double mi) {
    pairs_.emplace(pack(left, right), PairLookup{target, mi});
    if (left >= arcs_.size()) arcs_.resize(left + 1);
    arcs_[left].push_back(Arc{right, target, mi});
  }

  // Sorts adjacency lists; call once after the last insert.
  void finalize() {
    for (auto& list : arcs_)
      std::sort(list.begin(), list.end(),
                [](const Arc& a, const Arc& b) { return a.right < b.right; });
  }

  PairLookup lookup(EntryId left, EntryId right) const {
    auto it = pairs_.find(pack(left, right));
    return it == pairs_.end() ? PairLookup{} : it->second;
  }

  // Pairs with this left operand, ascending by right id.
  std::span<const Arc> arcs(EntryId left) const {
    if (left >= arcs_.size()) return {};
    return arcs_[left];
  }

  std::size_t size() const { return pairs_.size(); }

  // Uniformly rescales every weight; the selected parse of any sentence is
  // invariant under this.
  void scale_mi(double factor) {
    for (auto& [key, value] : pairs_) value.mi *= factor;
    for (auto& list : arcs_)
      for (auto& arc : list) arc.mi *= factor;
  }

  template <typename Fn>
  void for_each_sorted(Fn&& fn) const {
    std::vector<std::uint64_t> keys;
    keys.reserve(pairs_.size());
    for (const auto& [key, value] : pairs_) keys.push_back(key);
    std::sort(keys.begin(), keys.end());
    for (std::uint64_t key : keys) {
      const PairLookup& v = pairs_.at(key);
      fn(static_cast<EntryId>(key >> 32), static_cast<EntryId>(key & 0xffffffffu), v);
    }
  }

 private:
  static std::uint64_t pack(EntryId left, EntryId right) {
    return (static_cast<std::uint64_t>(left) << 32) | right;
  }

  std::unordered_map<std::uint64_t, PairLookup> pairs_;
  std::vector<std::vector<Arc>> arcs_;
};

// For every vocabulary entry that splits into two other entries, records
// delta(prefix, suffix) = whole with weight max(0, log2(P(whole) /
// (P(prefix) * P(suffix)))). Probabilities are entry counts over the total
// token count.
inline PairTable build_pair_table(const Vocabulary& vocab) {
  PairTable table;
  const double total = static_cast<double>(vocab.total_tokens());
  if (total == 0.0) return table;

  auto prob = [&](const Entry& e) { return static_cast<double>(e.count) / total; };

  for (EntryId k = 1; k < vocab.id_bound(); ++k) {
    const Entry& whole = vocab.entry(k);
    if (whole.tokens.size() < 2 || whole.count == 0) continue;
    for (std::size_t split = 1; split < whole.tokens.size(); ++split) {
      EntryId left = vocab.find(std::span(whole.tokens).first(split));
      if (left == kNoEntry) continue;
      EntryId right = vocab.find(std::span(whole.tokens).subspan(split));
      if (right == kNoEntry) continue;
      double pmi = std::log2(prob(whole) / (prob(vocab.entry(left)) * prob(vocab.entry(right))));
      table.insert(left, right, k, std::max(0.0, pmi));
    }
  }
  table.finalize();
  return table;
}

}  // namespace vecgram
