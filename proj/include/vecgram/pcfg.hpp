#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "vecgram/corpus.hpp"
#include "vecgram/errors.hpp"

namespace vecgram {

// Uniform draw in [0,1) from the top 53 bits; std::uniform_real_distribution
// is implementation-defined, this is not.
inline double next_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Production {
  std::vector<int> rhs;  // symbol ids
  double weight = 1.0;
};

// A small weighted CFG read from text. One rule per line:
//
//   # comment
//   S  -> NP VP
//   NP -> det n 0.5
//   NP -> pro 0.5
//
// A trailing number is the rule weight (default 1). Symbols with at least
// one rule are nonterminals; the start symbol is the first left-hand side.
// Terminals must survive the tokenizer unchanged.
class Grammar {
 public:
  static Grammar parse(const std::string& text) {
    Grammar g;
    std::istringstream lines(text);
    std::string line;
    int line_no = 0;
    while (std::getline(lines, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream fields(line);
      std::vector<std::string> toks;
      std::string tok;
      while (fields >> tok) toks.push_back(tok);
      if (toks.empty()) continue;
      if (toks.size() < 3 || toks[1] != "->")
        throw GrammarError("line " + std::to_string(line_no) + ": expected 'LHS -> RHS...'");

      double weight = 1.0;
      std::size_t rhs_end = toks.size();
      if (rhs_end > 3) {
        try {
          std::size_t used = 0;
          double w = std::stod(toks.back(), &used);
          if (used == toks.back().size()) {
            weight = w;
            --rhs_end;
          }
        } catch (const std::exception&) {
          // last token is a plain symbol
        }
      }
      if (!(weight > 0.0) || !std::isfinite(weight))
        throw GrammarError("line " + std::to_string(line_no) + ": weight must be positive");

      int lhs = g.symbol_id(toks[0]);
      Production prod;
      prod.weight = weight;
      for (std::size_t i = 2; i < rhs_end; ++i) prod.rhs.push_back(g.symbol_id(toks[i]));
      if (prod.rhs.empty())
        throw GrammarError("line " + std::to_string(line_no) + ": empty right-hand side");
      if (g.start_ < 0) g.start_ = lhs;
      g.rules_[lhs].push_back(std::move(prod));
    }
    if (g.start_ < 0) throw GrammarError("no rules");
    g.validate();
    return g;
  }

  bool is_nonterminal(int sym) const { return !rules_[sym].empty(); }
  int start() const { return start_; }
  const std::string& name(int sym) const { return names_[sym]; }
  const std::vector<Production>& productions(int sym) const { return rules_[sym]; }
  int fallback_production(int sym) const { return fallback_[sym]; }

 private:
  int symbol_id(const std::string& name) {
    auto it = ids_.find(name);
    if (it != ids_.end()) return it->second;
    int id = static_cast<int>(names_.size());
    names_.push_back(name);
    ids_.emplace(name, id);
    rules_.emplace_back();
    return id;
  }

  void validate() {
    for (std::size_t s = 0; s < names_.size(); ++s) {
      if (is_nonterminal(static_cast<int>(s))) continue;
      if (tokenize_line(names_[s]) != std::vector<std::string>{names_[s]})
        throw GrammarError("terminal '" + names_[s] + "' does not survive tokenization");
    }
    // Min derivation depth per symbol; infinite means the grammar can never
    // finish a sentence from that symbol.
    constexpr int kInf = std::numeric_limits<int>::max() / 2;
    std::vector<int> depth(names_.size(), kInf);
    fallback_.assign(names_.size(), 0);
    for (std::size_t s = 0; s < names_.size(); ++s)
      if (!is_nonterminal(static_cast<int>(s))) depth[s] = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (std::size_t s = 0; s < names_.size(); ++s) {
        if (!is_nonterminal(static_cast<int>(s))) continue;
        int best = kInf, best_idx = 0;
        const auto& prods = rules_[s];
        for (std::size_t p = 0; p < prods.size(); ++p) {
          int worst = 0;
          for (int sym : prods[p].rhs) worst = std::max(worst, depth[sym]);
          if (worst < kInf && worst + 1 < best) {
            best = worst + 1;
            best_idx = static_cast<int>(p);
          }
        }
        if (best < depth[s]) {
          depth[s] = best;
          fallback_[s] = best_idx;
          changed = true;
        }
      }
    }
    for (std::size_t s = 0; s < names_.size(); ++s)
      if (depth[s] >= kInf)
        throw GrammarError("symbol '" + names_[s] + "' cannot derive a finite sentence");
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, int> ids_;
  std::vector<std::vector<Production>> rules_;
  std::vector<int> fallback_;
  int start_ = -1;
};

struct GeneratedSentence {
  std::vector<std::string> words;
  std::vector<std::pair<int, int>> spans;  // every nonterminal constituent, raw
};

// Samples derivations from the grammar. Deterministic given the seed: the
// RNG is fully specified and draws happen in one fixed order. Past the depth
// or size limit the minimal-depth production is forced, so generation always
// terminates with a bounded sentence even for supercritical grammars.
class SentenceGenerator {
 public:
  SentenceGenerator(const Grammar& grammar, std::uint64_t seed, int depth_limit = 24,
                    std::size_t size_limit = 4096)
      : grammar_(grammar), rng_(seed), depth_limit_(depth_limit), size_limit_(size_limit) {}

  GeneratedSentence next() {
    GeneratedSentence out;
    expand(grammar_.start(), 0, out);
    return out;
  }

 private:
  void expand(int sym, int depth, GeneratedSentence& out) {
    if (!grammar_.is_nonterminal(sym)) {
      out.words.push_back(grammar_.name(sym));
      return;
    }
    const auto& prods = grammar_.productions(sym);
    std::size_t choice;
    if (depth >= depth_limit_ || out.words.size() >= size_limit_) {
      choice = static_cast<std::size_t>(grammar_.fallback_production(sym));
    } else {
      double total = 0.0;
      for (const auto& p : prods) total += p.weight;
      double u = next_unit(rng_) * total;
      double cum = 0.0;
      choice = prods.size() - 1;
      for (std::size_t p = 0; p < prods.size(); ++p) {
        cum += prods[p].weight;
        if (u < cum) {
          choice = p;
          break;
        }
      }
    }
    int start = static_cast<int>(out.words.size());
    for (int child : prods[choice].rhs) expand(child, depth + 1, out);
    out.spans.emplace_back(start, static_cast<int>(out.words.size()));
  }

  const Grammar& grammar_;
  std::mt19937_64 rng_;
  int depth_limit_;
  std::size_t size_limit_;
};

}  // namespace vecgram
