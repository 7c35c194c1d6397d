#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace vecgram {

using TokenId = std::uint32_t;

// Sentence frame sentinels. They take part in context features but are never
// vocabulary entries, so every real token has a full (left, right) context.
inline constexpr TokenId kBosToken = 0;
inline constexpr TokenId kEosToken = 1;

struct TokenizerConfig {
  std::string terminators = ".?!";  // sentence-ending punctuation
  bool lowercase = true;
};

class TokenTable {
 public:
  TokenTable() {
    intern("<s>");
    intern("</s>");
  }

  TokenId intern(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    TokenId id = static_cast<TokenId>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    return id;
  }

  // kBosToken if unknown; callers check find() first when that matters.
  TokenId find(const std::string& name) const {
    auto it = ids_.find(name);
    return it == ids_.end() ? kBosToken : it->second;
  }

  bool contains(const std::string& name) const { return ids_.count(name) > 0; }

  const std::string& name(TokenId id) const { return names_.at(id); }
  std::size_t size() const { return names_.size(); }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, TokenId> ids_;
};

struct Corpus {
  TokenTable tokens;
  // Each sentence is framed as [BOS, w1, ..., wn, EOS] with n >= 1.
  std::vector<std::vector<TokenId>> sentences;
  std::uint64_t real_token_count = 0;  // excludes sentinels
};

namespace detail {

inline bool is_word_char(unsigned char c) {
  // Bytes >= 0x80 (UTF-8 continuation/lead) are treated as word characters;
  // no normalization beyond ASCII lowercasing.
  return std::isalnum(c) || c >= 0x80;
}

inline char lower_ascii(unsigned char c, bool lowercase) {
  if (lowercase && c < 0x80) return static_cast<char>(std::tolower(c));
  return static_cast<char>(c);
}

}  // namespace detail

// Splits raw text into sentences of lowercased tokens. Words are maximal
// alnum runs, every other non-space character is a single-char token.
// Sentences end at a terminator character or a blank line.
inline Corpus tokenize(const std::string& text, const TokenizerConfig& config = {}) {
  Corpus corpus;
  std::vector<TokenId> sentence;
  std::string word;
  int pending_newlines = 0;

  auto flush_word = [&] {
    if (word.empty()) return;
    sentence.push_back(corpus.tokens.intern(word));
    ++corpus.real_token_count;
    word.clear();
  };
  auto flush_sentence = [&] {
    flush_word();
    if (sentence.empty()) return;
    std::vector<TokenId> framed;
    framed.reserve(sentence.size() + 2);
    framed.push_back(kBosToken);
    framed.insert(framed.end(), sentence.begin(), sentence.end());
    framed.push_back(kEosToken);
    corpus.sentences.push_back(std::move(framed));
    sentence.clear();
  };

  for (unsigned char c : text) {
    if (c == '\n') {
      flush_word();
      if (++pending_newlines >= 2) flush_sentence();
      continue;
    }
    if (c < 0x80 && std::isspace(c)) {
      flush_word();
      continue;
    }
    pending_newlines = 0;
    if (detail::is_word_char(c)) {
      word.push_back(detail::lower_ascii(c, config.lowercase));
      continue;
    }
    flush_word();
    sentence.push_back(corpus.tokens.intern(std::string(1, static_cast<char>(c))));
    ++corpus.real_token_count;
    if (config.terminators.find(static_cast<char>(c)) != std::string::npos) flush_sentence();
  }
  flush_sentence();
  return corpus;
}

// Lexes one line as a single sentence (terminators are kept as plain tokens).
// Used by the parser front end.
inline std::vector<std::string> tokenize_line(const std::string& line,
                                              const TokenizerConfig& config = {}) {
  std::vector<std::string> out;
  std::string word;
  auto flush_word = [&] {
    if (!word.empty()) {
      out.push_back(word);
      word.clear();
    }
  };
  for (unsigned char c : line) {
    if (c < 0x80 && std::isspace(c)) {
      flush_word();
      continue;
    }
    if (detail::is_word_char(c)) {
      word.push_back(detail::lower_ascii(c, config.lowercase));
      continue;
    }
    flush_word();
    out.emplace_back(1, static_cast<char>(c));
  }
  flush_word();
  return out;
}

}  // namespace vecgram
