#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vecgram/context.hpp"
#include "vecgram/corpus.hpp"
#include "vecgram/errors.hpp"
#include "vecgram/pair_table.hpp"
#include "vecgram/sim_vector.hpp"
#include "vecgram/similarity.hpp"
#include "vecgram/vocab.hpp"

namespace vecgram {

struct ModelConfig {
  int ngram_max = 3;
  int min_count = 2;
  double threshold_c = 0.01;
  int top_k = 200;
  bool normalize_composed = false;
};

struct StatsSummary {
  std::uint64_t grand_total = 0;
  std::uint64_t distinct_features = 0;
};

// Everything the parser needs at run time: vocabulary, one class vector per
// entry, and the observed-pair table. Immutable once built or loaded.
struct Model {
  ModelConfig config;
  Vocabulary vocab;
  std::vector<SimVector> class_vectors;  // indexed by entry id
  PairTable pairs;
  StatsSummary stats;

  const SimVector& leaf_vector(EntryId w) const {
    if (w == kNoEntry || w >= class_vectors.size() || class_vectors[w].empty())
      throw OutOfVocabularyError("entry id " + std::to_string(w));
    return class_vectors[w];
  }

  bool has_vector(EntryId w) const {
    return w != kNoEntry && w < class_vectors.size() && !class_vectors[w].empty();
  }

  // Maps one surface word to its unigram entry; unknown words fall back to
  // the reserved UNK entry, which pairs with nothing.
  EntryId token_entry(const std::string& word) const {
    if (vocab.tokens().contains(word)) {
      TokenId t = vocab.tokens().find(word);
      EntryId e = vocab.find(std::span(&t, 1));
      if (e != kNoEntry) return e;
    }
    return vocab.unk();
  }
};

// Adds the reserved UNK entry and its singleton vector {unk: 1}. UNK never
// occurs in the corpus, so the pair table cannot reference it.
inline void add_unk_entry(Vocabulary& vocab, std::vector<SimVector>& class_vectors) {
  TokenId unk_token = vocab.tokens().intern(kUnkSurface);
  EntryId unk = vocab.add({unk_token}, 0);
  vocab.set_unk(unk);
  class_vectors.resize(vocab.id_bound());
  class_vectors[unk] = SimVector::from_sorted({{unk, 1.0}});
}

inline Model build_model(const Corpus& corpus, const ModelConfig& config) {
  Model model;
  model.config = config;
  model.vocab = build_vocabulary(corpus, config.ngram_max, config.min_count);
  ContextStats stats = count_contexts(corpus, model.vocab);
  model.class_vectors =
      build_all_class_vectors(stats, model.vocab, config.threshold_c, config.top_k);
  add_unk_entry(model.vocab, model.class_vectors);
  model.pairs = build_pair_table(model.vocab);
  model.stats = StatsSummary{stats.grand_total(), stats.distinct_features()};
  return model;
}

inline Model train_model(const std::string& text, const ModelConfig& config = {},
                         const TokenizerConfig& tokenizer = {}) {
  return build_model(tokenize(text, tokenizer), config);
}

}  // namespace vecgram
