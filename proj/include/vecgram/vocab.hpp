#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "vecgram/corpus.hpp"
#include "vecgram/errors.hpp"

namespace vecgram {

using EntryId = std::uint32_t;

// Entry id 0 is reserved: it means "no such entry" in the pair map.
inline constexpr EntryId kNoEntry = 0;

inline const std::string kUnkSurface = "<unk>";  // never producible by the tokenizer

struct Entry {
  EntryId id = kNoEntry;
  std::vector<TokenId> tokens;  // length >= 1
  std::uint64_t count = 0;      // corpus occurrences, with multiplicity
};

namespace detail {
struct TokenSeqHash {
  std::size_t operator()(const std::vector<TokenId>& seq) const {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a
    for (TokenId t : seq) {
      h ^= t;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};
}  // namespace detail

// Words and frequent word sequences, with dense ids 1..N. Multi-token
// entries display as '&'-joined strings ("a&lot").
class Vocabulary {
 public:
  Vocabulary() : entries_(1) {}  // slot 0 stays empty

  EntryId add(std::vector<TokenId> tokens, std::uint64_t count) {
    EntryId id = static_cast<EntryId>(entries_.size());
    auto [it, inserted] = index_.emplace(tokens, id);
    if (!inserted) throw std::invalid_argument("duplicate vocabulary entry");
    entries_.push_back(Entry{id, std::move(tokens), count});
    max_entry_tokens_ = std::max(max_entry_tokens_, entries_.back().tokens.size());
    return id;
  }

  EntryId find(std::span<const TokenId> tokens) const {
    scratch_.assign(tokens.begin(), tokens.end());
    auto it = index_.find(scratch_);
    return it == index_.end() ? kNoEntry : it->second;
  }

  // Looks up a '&'-joined surface form ("the&cat"). A '&' directly after a
  // separator is read as the single-char '&' token; forms mixing several
  // '&' tokens are ambiguous and resolved best-effort.
  EntryId find_surface(const std::string& canonical) const {
    std::vector<TokenId> seq;
    std::string part;
    for (char c : canonical) {
      if (c != '&') {
        part.push_back(c);
        continue;
      }
      const std::string tok = part.empty() ? "&" : part;
      if (!tokens_.contains(tok)) return kNoEntry;
      seq.push_back(tokens_.find(tok));
      part.clear();
    }
    if (!part.empty()) {
      if (!tokens_.contains(part)) return kNoEntry;
      seq.push_back(tokens_.find(part));
    }
    if (seq.empty()) return kNoEntry;
    return find(seq);
  }

  const Entry& entry(EntryId id) const {
    if (id == kNoEntry || id >= entries_.size())
      throw OutOfVocabularyError("entry id " + std::to_string(id));
    return entries_[id];
  }

  std::string canonical(EntryId id) const {
    const Entry& e = entry(id);
    std::string s;
    for (std::size_t i = 0; i < e.tokens.size(); ++i) {
      if (i) s.push_back('&');
      s += tokens_.name(e.tokens[i]);
    }
    return s;
  }

  std::size_t entry_count() const { return entries_.size() - 1; }  // excludes slot 0
  std::size_t id_bound() const { return entries_.size(); }         // one past max id
  std::size_t max_entry_tokens() const { return max_entry_tokens_; }

  const TokenTable& tokens() const { return tokens_; }
  TokenTable& tokens() { return tokens_; }

  EntryId unk() const { return unk_; }
  void set_unk(EntryId id) { unk_ = id; }

  std::uint64_t total_tokens() const { return total_tokens_; }
  void set_total_tokens(std::uint64_t n) { total_tokens_ = n; }

 private:
  std::vector<Entry> entries_;
  std::unordered_map<std::vector<TokenId>, EntryId, detail::TokenSeqHash> index_;
  TokenTable tokens_;
  EntryId unk_ = kNoEntry;
  std::uint64_t total_tokens_ = 0;
  std::size_t max_entry_tokens_ = 1;
  mutable std::vector<TokenId> scratch_;
};

// Collects every distinct unigram plus every n-gram (2..ngram_max) occurring
// at least min_count times. N-grams never cross sentence boundaries or touch
// the sentinels. Ids are assigned in first-occurrence order, unigrams first,
// then n-grams by length. The reserved UNK entry is added later, when a
// model is assembled; the raw vocabulary holds corpus entries only.
inline Vocabulary build_vocabulary(const Corpus& corpus, int ngram_max, int min_count) {
  if (ngram_max < 1) throw std::invalid_argument("ngram_max must be >= 1");
  if (min_count < 1) throw std::invalid_argument("min_count must be >= 1");

  struct Slot {
    std::uint64_t count = 0;
    std::uint64_t first_seen = 0;
  };
  std::unordered_map<std::vector<TokenId>, Slot, detail::TokenSeqHash> counts;
  std::uint64_t tick = 0;

  for (const auto& sentence : corpus.sentences) {
    const std::size_t last = sentence.size() - 1;  // EOS index
    for (std::size_t pos = 1; pos < last; ++pos) {
      for (std::size_t n = 1; n <= static_cast<std::size_t>(ngram_max) && pos + n <= last; ++n) {
        std::vector<TokenId> key(sentence.begin() + pos, sentence.begin() + pos + n);
        auto [it, inserted] = counts.try_emplace(std::move(key));
        if (inserted) it->second.first_seen = tick;
        ++it->second.count;
        ++tick;
      }
    }
  }

  Vocabulary vocab;
  vocab.tokens() = corpus.tokens;
  vocab.set_total_tokens(corpus.real_token_count);

  std::vector<std::pair<std::uint64_t, const std::vector<TokenId>*>> order;
  for (std::size_t n = 1; n <= static_cast<std::size_t>(ngram_max); ++n) {
    order.clear();
    for (const auto& [seq, slot] : counts) {
      if (seq.size() != n) continue;
      if (n > 1 && slot.count < static_cast<std::uint64_t>(min_count)) continue;
      order.emplace_back(slot.first_seen, &seq);
    }
    std::sort(order.begin(), order.end());
    for (auto& [first_seen, seq] : order) vocab.add(*seq, counts.at(*seq).count);
  }
  return vocab;
}

}  // namespace vecgram
