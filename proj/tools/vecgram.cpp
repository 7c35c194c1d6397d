// Command-line front end: train, similar, compose, parse, eval.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "vecgram/vecgram.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  return buffer.str();
}

std::string format_score(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// "word,score word,score ...": best scores first, the vector's own entry at
// the head when present.
std::string format_vector(const vecgram::Model& model, const vecgram::SimVector& v,
                          vecgram::EntryId self = vecgram::kNoEntry) {
  std::vector<vecgram::SimVector::Component> comps(v.components().begin(),
                                                   v.components().end());
  std::sort(comps.begin(), comps.end(), [self](const auto& a, const auto& b) {
    if ((a.first == self) != (b.first == self)) return a.first == self;
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::string out;
  char buf[64];
  for (const auto& [id, score] : comps) {
    if (!out.empty()) out.push_back(' ');
    std::snprintf(buf, sizeof(buf), "%.6g", score);
    out += model.vocab.canonical(id) + "," + buf;
  }
  return out.empty() ? "(empty)" : out;
}

// Bracketed tree expression: expr := word | '(' expr expr ')'.
struct ExprParser {
  const std::string& text;
  std::size_t pos = 0;
  const vecgram::Model& model;
  int leaf_count = 0;
  std::vector<std::string> words;

  void skip_space() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }

  vecgram::ParseNodePtr parse_expr() {
    skip_space();
    if (pos >= text.size()) throw std::runtime_error("unexpected end of tree expression");
    if (text[pos] == '(') {
      ++pos;
      auto left = parse_expr();
      auto right = parse_expr();
      skip_space();
      if (pos >= text.size() || text[pos] != ')')
        throw std::runtime_error("expected ')' in tree expression (nodes are binary)");
      ++pos;
      return vecgram::make_node(std::move(left), std::move(right));
    }
    if (text[pos] == ')') throw std::runtime_error("unexpected ')' in tree expression");
    std::size_t start = pos;
    while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
           text[pos] != '(' && text[pos] != ')')
      ++pos;
    std::string word = text.substr(start, pos - start);
    std::vector<std::string> toks = vecgram::tokenize_line(word);
    if (toks.size() != 1) throw std::runtime_error("not a single token: '" + word + "'");
    words.push_back(toks[0]);
    return vecgram::make_leaf(leaf_count++, model.token_entry(toks[0]));
  }

  vecgram::ParseNodePtr parse_whole() {
    auto node = parse_expr();
    skip_space();
    if (pos != text.size()) throw std::runtime_error("trailing input after tree expression");
    return node;
  }
};

struct ModelFlags {
  vecgram::ModelConfig config;
  void attach(CLI::App* cmd) {
    cmd->add_option("--ngram-max", config.ngram_max, "longest word sequence collected")
        ->capture_default_str();
    cmd->add_option("--min-count", config.min_count,
                    "occurrence threshold for multi-word entries")
        ->capture_default_str();
    cmd->add_option("--threshold-c", config.threshold_c, "similarity threshold C")
        ->capture_default_str();
    cmd->add_option("--top-k", config.top_k, "components kept per vector")
        ->capture_default_str();
    cmd->add_flag("--normalize-composed", config.normalize_composed,
                  "L1-normalize composed vectors (off by default)");
  }
};

struct ParseFlags {
  vecgram::ParseOptions options;
  std::string score_mode = "sum";
  void attach(CLI::App* cmd) {
    cmd->add_option("--beam", options.beam_width, "beam width per chart span")
        ->capture_default_str();
    cmd->add_option("--max-exact-len", options.max_exact_len,
                    "longest sentence parsed by exact enumeration")
        ->capture_default_str();
    cmd->add_option("--score-mode", score_mode, "sum | concentration")
        ->check(CLI::IsMember({"sum", "concentration"}))
        ->capture_default_str();
  }
  vecgram::ParseOptions resolved() const {
    vecgram::ParseOptions out = options;
    out.score_mode = score_mode == "concentration" ? vecgram::ScoreMode::kConcentration
                                                   : vecgram::ScoreMode::kSum;
    return out;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vecgram: parsing with a grammar of word association vectors"};
  app.require_subcommand(1);

  // train
  auto* train = app.add_subcommand("train", "train a model from text files");
  std::vector<std::string> train_inputs;
  std::string train_model_path;
  ModelFlags train_flags;
  train->add_option("inputs", train_inputs, "UTF-8 text files")->required();
  train->add_option("--model", train_model_path, "output model file")->required();
  train_flags.attach(train);

  // similar
  auto* similar = app.add_subcommand("similar", "print the class vector of a word");
  std::string similar_model_path, similar_word;
  similar->add_option("--model", similar_model_path, "model file")->required();
  similar->add_option("word", similar_word, "word or '&'-joined sequence")->required();

  // compose
  auto* compose_cmd = app.add_subcommand(
      "compose", "compose two words or a bracketed tree expression");
  std::string compose_model_path;
  std::vector<std::string> compose_args;
  compose_cmd->add_option("--model", compose_model_path, "model file")->required();
  compose_cmd->add_option("args", compose_args, "W1 W2, or \"((w1 w2) w3)\"")
      ->expected(1, 2)
      ->required();

  // parse
  auto* parse = app.add_subcommand("parse", "parse sentences, one per line");
  std::string parse_model_path;
  std::vector<std::string> parse_inputs;
  ParseFlags parse_flags;
  parse->add_option("--model", parse_model_path, "model file")->required();
  parse->add_option("inputs", parse_inputs, "sentence files (default: stdin)");
  parse_flags.attach(parse);

  // eval
  auto* eval = app.add_subcommand("eval", "synthetic-corpus benchmark");
  std::string eval_grammar_path, eval_model_path;
  vecgram::EvalOptions eval_options;
  ModelFlags eval_model_flags;
  ParseFlags eval_parse_flags;
  eval->add_option("--grammar", eval_grammar_path, "weighted CFG file")->required();
  eval->add_option("--train-sentences", eval_options.train_sentences, "training sample size")
      ->capture_default_str();
  eval->add_option("--test-sentences", eval_options.test_sentences, "held-out sample size")
      ->capture_default_str();
  eval->add_option("--seed", eval_options.seed, "generator seed")->capture_default_str();
  eval->add_option("--model", eval_model_path, "optionally save the trained model here");
  eval_model_flags.attach(eval);
  eval_parse_flags.attach(eval);

  CLI11_PARSE(app, argc, argv);

  try {
    if (train->parsed()) {
      std::string text;
      for (const auto& path : train_inputs) {
        text += read_file(path);
        text += "\n\n";  // file boundary is a sentence boundary
      }
      vecgram::Model model = vecgram::train_model(text, train_flags.config);
      vecgram::save_model(model, train_model_path);
      std::cout << "entries=" << model.vocab.entry_count()
                << " pairs=" << model.pairs.size()
                << " contexts=" << model.stats.grand_total << "\n";
      return 0;
    }

    if (similar->parsed()) {
      vecgram::Model model = vecgram::load_model(similar_model_path);
      vecgram::EntryId e = model.vocab.find_surface(similar_word);
      if (e == vecgram::kNoEntry || !model.has_vector(e)) {
        std::cerr << "unknown word: " << similar_word << "\n";
        return 1;
      }
      std::cout << format_vector(model, model.leaf_vector(e), e) << "\n";
      return 0;
    }

    if (compose_cmd->parsed()) {
      vecgram::Model model = vecgram::load_model(compose_model_path);
      if (compose_args.size() == 2) {
        vecgram::EntryId a = model.vocab.find_surface(compose_args[0]);
        vecgram::EntryId b = model.vocab.find_surface(compose_args[1]);
        if (a == vecgram::kNoEntry) a = model.vocab.unk();
        if (b == vecgram::kNoEntry) b = model.vocab.unk();
        vecgram::PairLookup hit = model.pairs.lookup(a, b);
        if (hit.entry == vecgram::kNoEntry)
          std::cout << "pair: (none) mi: 0\n";
        else
          std::cout << "pair: " << model.vocab.canonical(hit.entry) << " mi: " << hit.mi
                    << "\n";
        vecgram::SimVector out = vecgram::compose(
            model, model.has_vector(a) ? model.leaf_vector(a) : vecgram::SimVector{},
            model.has_vector(b) ? model.leaf_vector(b) : vecgram::SimVector{});
        std::cout << "vector: " << format_vector(model, out) << "\n";
        std::cout << "score: " << format_score(vecgram::score(out)) << "\n";
        return 0;
      }
      ExprParser parser{compose_args[0], 0, model, 0, {}};
      vecgram::ParseNodePtr tree = parser.parse_whole();
      vecgram::evaluate_tree(model, *tree);
      std::cout << "tree: " << vecgram::render_tree(*tree, parser.words) << "\n";
      std::cout << "vector: " << format_vector(model, tree->vector) << "\n";
      std::cout << "score: " << format_score(vecgram::score(tree->vector)) << "\n";
      return 0;
    }

    if (parse->parsed()) {
      vecgram::Model model = vecgram::load_model(parse_model_path);
      vecgram::ParseOptions options = parse_flags.resolved();
      auto parse_stream = [&](std::istream& in) {
        std::string line;
        while (std::getline(in, line)) {
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          vecgram::ParseResult result = vecgram::parse_sentence(model, line, options);
          std::cout << result.bracketed() << "\t" << format_score(result.score) << "\n";
        }
      };
      if (parse_inputs.empty()) {
        parse_stream(std::cin);
      } else {
        for (const auto& path : parse_inputs) {
          std::ifstream file(path);
          if (!file) throw std::runtime_error("cannot open: " + path);
          parse_stream(file);
        }
      }
      return 0;
    }

    if (eval->parsed()) {
      eval_options.model_config = eval_model_flags.config;
      eval_options.parse_options = eval_parse_flags.resolved();
      vecgram::Grammar grammar = vecgram::Grammar::parse(read_file(eval_grammar_path));
      if (!eval_model_path.empty()) {
        // Save the trained model as a side effect for inspection.
        vecgram::SentenceGenerator gen(grammar, eval_options.seed);
        std::string text;
        for (int s = 0; s < eval_options.train_sentences; ++s) {
          auto sentence = gen.next();
          for (std::size_t w = 0; w < sentence.words.size(); ++w) {
            if (w) text.push_back(' ');
            text += sentence.words[w];
          }
          text += "\n\n";
        }
        vecgram::save_model(vecgram::train_model(text, eval_options.model_config),
                            eval_model_path);
      }
      vecgram::EvalReport report = vecgram::run_evaluation(grammar, eval_options);
      std::printf(
          "precision=%.4f recall=%.4f f1=%.4f left_f1=%.4f right_f1=%.4f sentences=%zu\n",
          report.parser.precision, report.parser.recall, report.parser.f1,
          report.left_baseline.f1, report.right_baseline.f1,
          report.parser.sentence_count);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
