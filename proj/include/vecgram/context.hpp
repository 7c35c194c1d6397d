#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "vecgram/corpus.hpp"
#include "vecgram/errors.hpp"
#include "vecgram/vocab.hpp"

namespace vecgram {

// The ordered pair of tokens flanking an occurrence of a vocabulary entry.
struct ContextFeature {
  TokenId left = 0;
  TokenId right = 0;

  friend bool operator==(const ContextFeature&, const ContextFeature&) = default;
};

namespace detail {
inline std::uint64_t pack_feature(ContextFeature f) {
  return (static_cast<std::uint64_t>(f.left) << 32) | f.right;
}
inline ContextFeature unpack_feature(std::uint64_t key) {
  return ContextFeature{static_cast<TokenId>(key >> 32),
                        static_cast<TokenId>(key & 0xffffffffu)};
}
}  // namespace detail

// Per-entry context counts plus the global feature distribution that backs
// the information measure. Frozen (sorted, cached) after counting.
class ContextStats {
 public:
  using FeatureCount = std::pair<std::uint64_t, std::uint32_t>;  // packed feature, count

  // Sorted by packed feature; empty span when the entry never occurred.
  std::span<const FeatureCount> features(EntryId e) const {
    if (e >= contexts_.size()) return {};
    return contexts_[e];
  }
  bool has_contexts(EntryId e) const { return !features(e).empty(); }

  std::uint64_t grand_total() const { return grand_total_; }
  std::size_t distinct_features() const { return feature_totals_.size(); }

  std::uint64_t feature_total(std::uint64_t packed) const {
    auto it = feature_totals_.find(packed);
    return it == feature_totals_.end() ? 0 : it->second;
  }

  // -log2 P(f); throws for unobserved features.
  double feature_information(std::uint64_t packed) const {
    auto it = feature_info_.find(packed);
    if (it == feature_info_.end()) throw UnknownFeatureError(describe(packed));
    return it->second;
  }

  // I(Con(e)), precomputed over the sorted support set.
  double entry_information(EntryId e) const {
    return e < entry_info_.size() ? entry_info_[e] : 0.0;
  }

  // Entries whose context set contains the feature, ascending by id.
  std::span<const EntryId> entries_with(std::uint64_t packed) const {
    auto it = feature_entries_.find(packed);
    if (it == feature_entries_.end()) return {};
    return it->second;
  }

  const std::unordered_map<std::uint64_t, std::uint64_t>& feature_totals() const {
    return feature_totals_;
  }

  std::string describe(std::uint64_t packed) const {
    ContextFeature f = detail::unpack_feature(packed);
    return "(" + std::to_string(f.left) + "," + std::to_string(f.right) + ")";
  }

  // Counting interface, used by count_contexts.
  void bump(EntryId e, ContextFeature f) {
    if (e >= raw_.size()) raw_.resize(e + 1);
    ++raw_[e][detail::pack_feature(f)];
  }

  void freeze() {
    contexts_.assign(raw_.size(), {});
    grand_total_ = 0;
    for (std::size_t e = 0; e < raw_.size(); ++e) {
      auto& sorted = contexts_[e];
      sorted.assign(raw_[e].begin(), raw_[e].end());
      std::sort(sorted.begin(), sorted.end());
      for (const auto& [packed, count] : sorted) {
        feature_totals_[packed] += count;
        grand_total_ += count;
      }
    }
    raw_.clear();
    for (const auto& [packed, total] : feature_totals_) {
      feature_info_[packed] =
          -std::log2(static_cast<double>(total) / static_cast<double>(grand_total_));
    }
    entry_info_.assign(contexts_.size(), 0.0);
    for (std::size_t e = 0; e < contexts_.size(); ++e) {
      double info = 0.0;
      for (const auto& [packed, count] : contexts_[e]) info += feature_info_.at(packed);
      entry_info_[e] = info;
      for (const auto& [packed, count] : contexts_[e])
        feature_entries_[packed].push_back(static_cast<EntryId>(e));
    }
    // Entries were visited in ascending id order, so the lists are sorted.
  }

 private:
  std::vector<std::unordered_map<std::uint64_t, std::uint32_t>> raw_;
  std::vector<std::vector<FeatureCount>> contexts_;
  std::unordered_map<std::uint64_t, std::uint64_t> feature_totals_;
  std::unordered_map<std::uint64_t, double> feature_info_;
  std::unordered_map<std::uint64_t, std::vector<EntryId>> feature_entries_;
  std::vector<double> entry_info_;
  std::uint64_t grand_total_ = 0;
};

// Counts, for every vocabulary entry and every position where its token
// sequence occurs, the (previous token, following token) pair. Sentinels
// count as context tokens, so every occurrence has a feature.
inline ContextStats count_contexts(const Corpus& corpus, const Vocabulary& vocab) {
  ContextStats stats;
  const std::size_t max_len = vocab.max_entry_tokens();
  for (const auto& sentence : corpus.sentences) {
    const std::size_t last = sentence.size() - 1;  // EOS index
    for (std::size_t pos = 1; pos < last; ++pos) {
      for (std::size_t n = 1; n <= max_len && pos + n <= last; ++n) {
        EntryId e = vocab.find(std::span(sentence).subspan(pos, n));
        if (e == kNoEntry) continue;
        stats.bump(e, ContextFeature{sentence[pos - 1], sentence[pos + n]});
      }
    }
  }
  stats.freeze();
  return stats;
}

inline double feature_probability(const ContextStats& stats, ContextFeature f) {
  std::uint64_t packed = detail::pack_feature(f);
  std::uint64_t total = stats.feature_total(packed);
  if (total == 0) throw UnknownFeatureError(stats.describe(packed));
  return static_cast<double>(total) / static_cast<double>(stats.grand_total());
}

// Sum of -log2 P(f) over a feature set, in ascending packed order so the
// result does not depend on how the caller arranged the set.
inline double information(const ContextStats& stats, std::vector<ContextFeature> features) {
  std::vector<std::uint64_t> keys;
  keys.reserve(features.size());
  for (ContextFeature f : features) keys.push_back(detail::pack_feature(f));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  double info = 0.0;
  for (std::uint64_t key : keys) info += stats.feature_information(key);
  return info;
}

}  // namespace vecgram
