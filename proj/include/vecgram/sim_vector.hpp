#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "vecgram/vocab.hpp"

namespace vecgram {

// Sparse non-negative vector over vocabulary entry ids. Components are kept
// sorted by id; zeros are simply absent.
class SimVector {
 public:
  using Component = std::pair<EntryId, double>;

  SimVector() = default;

  // Takes components already sorted by id with strictly positive scores.
  static SimVector from_sorted(std::vector<Component> components) {
    SimVector v;
    v.components_ = std::move(components);
    return v;
  }

  // Keeps the top_k best-scoring components (ties broken toward smaller id).
  // An optional pinned id survives selection unconditionally. Non-positive
  // scores are dropped. Output is re-sorted by id.
  static SimVector top_k(std::vector<Component> items, std::size_t k,
                         EntryId pinned = kNoEntry) {
    std::erase_if(items, [](const Component& c) { return !(c.second > 0.0); });
    auto rank = [pinned](const Component& a, const Component& b) {
      if ((a.first == pinned) != (b.first == pinned)) return a.first == pinned;
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    };
    if (items.size() > k) {
      std::nth_element(items.begin(), items.begin() + k, items.end(), rank);
      items.resize(k);
    }
    std::sort(items.begin(), items.end(),
              [](const Component& a, const Component& b) { return a.first < b.first; });
    return from_sorted(std::move(items));
  }

  std::span<const Component> components() const { return components_; }

  double value(EntryId id) const {
    auto it = std::lower_bound(
        components_.begin(), components_.end(), id,
        [](const Component& c, EntryId key) { return c.first < key; });
    return (it != components_.end() && it->first == id) ? it->second : 0.0;
  }

  // Componentwise sum, accumulated in ascending-id order.
  double sum() const {
    double s = 0.0;
    for (const auto& [id, score] : components_) s += score;
    return s;
  }

  bool empty() const { return components_.empty(); }
  std::size_t size() const { return components_.size(); }

  friend bool operator==(const SimVector& a, const SimVector& b) {
    return a.components_ == b.components_;
  }

 private:
  std::vector<Component> components_;
};

}  // namespace vecgram
