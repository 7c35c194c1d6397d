#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <system_error>
#include <vector>

#include <nlohmann/json.hpp>

#include "vecgram/errors.hpp"
#include "vecgram/model.hpp"

namespace vecgram {

inline constexpr int kModelFormatVersion = 1;

namespace detail {

// %.17g: enough digits to reproduce the exact double on load.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline void append_json_string(std::string& out, const std::string& s) {
  out.push_back('"');
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out.push_back(static_cast<char>(c));
        }
    }
  }
  out.push_back('"');
}

}  // namespace detail

// Model file schema, documented field by field in docs/model-format.md.
// Keys are emitted in sorted order and floats with 17 significant digits,
// so saving the same model twice yields byte-identical files.
inline std::string serialize_model(const Model& model) {
  std::string out;
  out.reserve(1 << 20);
  out += "{\n";

  out += "\"class_vectors\": [";
  bool first = true;
  for (EntryId e = 1; e < model.vocab.id_bound(); ++e) {
    if (model.class_vectors[e].empty()) continue;
    if (!first) out += ",";
    first = false;
    out += "\n  [" + std::to_string(e) + ", [";
    bool first_comp = true;
    for (const auto& [k, s] : model.class_vectors[e].components()) {
      if (!first_comp) out += ", ";
      first_comp = false;
      out += "[" + std::to_string(k) + ", " + detail::format_double(s) + "]";
    }
    out += "]]";
  }
  out += "\n],\n";

  const ModelConfig& c = model.config;
  out += "\"config\": {\"min_count\": " + std::to_string(c.min_count) +
         ", \"ngram_max\": " + std::to_string(c.ngram_max) +
         ", \"normalize_composed\": " + (c.normalize_composed ? "true" : "false") +
         ", \"threshold_c\": " + detail::format_double(c.threshold_c) +
         ", \"top_k\": " + std::to_string(c.top_k) + "},\n";

  out += "\"format_version\": " + std::to_string(kModelFormatVersion) + ",\n";

  out += "\"pair_table\": [";
  first = true;
  model.pairs.for_each_sorted([&](EntryId i, EntryId j, const PairLookup& p) {
    if (!first) out += ",";
    first = false;
    out += "\n  [" + std::to_string(i) + ", " + std::to_string(j) + ", " +
           std::to_string(p.entry) + ", " + detail::format_double(p.mi) + "]";
  });
  out += "\n],\n";

  out += "\"stats_summary\": {\"distinct_features\": " +
         std::to_string(model.stats.distinct_features) +
         ", \"grand_total\": " + std::to_string(model.stats.grand_total) + "},\n";

  out += "\"vocabulary\": {\"entries\": [";
  first = true;
  for (EntryId e = 1; e < model.vocab.id_bound(); ++e) {
    const Entry& entry = model.vocab.entry(e);
    if (!first) out += ",";
    first = false;
    out += "\n  [" + std::to_string(e) + ", " + std::to_string(entry.count) + ", [";
    for (std::size_t t = 0; t < entry.tokens.size(); ++t) {
      if (t) out += ", ";
      detail::append_json_string(out, model.vocab.tokens().name(entry.tokens[t]));
    }
    out += "]]";
  }
  out += "\n], \"total_tokens\": " + std::to_string(model.vocab.total_tokens()) +
         ", \"unk_id\": " + std::to_string(model.vocab.unk()) + "}\n";

  out += "}\n";
  return out;
}

inline void save_model(const Model& model, const std::string& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw ModelIoError("cannot open for writing: " + path);
  std::string data = serialize_model(model);
  file.write(data.data(), static_cast<std::streamsize>(data.size()));
  file.flush();
  if (!file) throw ModelIoError("write failed: " + path);
}

namespace detail {

using json = nlohmann::json;

inline const json& require_key(const json& obj, const char* key, const char* where) {
  if (!obj.is_object()) throw SchemaError(std::string(where) + " is not an object");
  auto it = obj.find(key);
  if (it == obj.end())
    throw SchemaError(std::string(where) + " is missing key '" + key + "'");
  return *it;
}

inline void require_only_keys(const json& obj, std::initializer_list<const char*> keys,
                              const char* where) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      if (it.key() == k) known = true;
    if (!known)
      throw SchemaError(std::string(where) + " has unknown key '" + it.key() + "'");
  }
}

inline std::int64_t require_int(const json& v, const char* where) {
  if (!v.is_number_integer()) throw SchemaError(std::string(where) + " must be an integer");
  return v.get<std::int64_t>();
}

inline double require_finite(const json& v, const char* where) {
  if (!v.is_number()) throw SchemaError(std::string(where) + " must be a number");
  double d = v.get<double>();
  if (!std::isfinite(d)) throw NumericError(std::string(where) + " is not finite");
  return d;
}

}  // namespace detail

inline Model parse_model(const std::string& text) {
  using detail::json;
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw SchemaError(std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw SchemaError("root is not an object");
  detail::require_only_keys(root,
                            {"class_vectors", "config", "format_version", "pair_table",
                             "stats_summary", "vocabulary"},
                            "root");

  std::int64_t version = detail::require_int(detail::require_key(root, "format_version", "root"),
                                             "format_version");
  if (version != kModelFormatVersion)
    throw VersionError("file has format_version " + std::to_string(version) + ", expected " +
                       std::to_string(kModelFormatVersion));

  Model model;

  const json& config = detail::require_key(root, "config", "root");
  detail::require_only_keys(
      config, {"min_count", "ngram_max", "normalize_composed", "threshold_c", "top_k"}, "config");
  model.config.min_count =
      static_cast<int>(detail::require_int(detail::require_key(config, "min_count", "config"), "min_count"));
  model.config.ngram_max =
      static_cast<int>(detail::require_int(detail::require_key(config, "ngram_max", "config"), "ngram_max"));
  const json& norm = detail::require_key(config, "normalize_composed", "config");
  if (!norm.is_boolean()) throw SchemaError("normalize_composed must be a boolean");
  model.config.normalize_composed = norm.get<bool>();
  model.config.threshold_c =
      detail::require_finite(detail::require_key(config, "threshold_c", "config"), "threshold_c");
  model.config.top_k =
      static_cast<int>(detail::require_int(detail::require_key(config, "top_k", "config"), "top_k"));
  if (model.config.min_count < 1) throw NumericError("min_count must be >= 1");
  if (model.config.ngram_max < 1) throw NumericError("ngram_max must be >= 1");
  if (!(model.config.threshold_c >= 0.0 && model.config.threshold_c < 1.0))
    throw NumericError("threshold_c must be in [0,1)");
  if (model.config.top_k < 1) throw NumericError("top_k must be >= 1");

  const json& vocab_obj = detail::require_key(root, "vocabulary", "root");
  detail::require_only_keys(vocab_obj, {"entries", "total_tokens", "unk_id"}, "vocabulary");
  const json& entries = detail::require_key(vocab_obj, "entries", "vocabulary");
  if (!entries.is_array()) throw SchemaError("vocabulary.entries must be an array");
  EntryId next_id = 1;
  for (const json& rec : entries) {
    if (!rec.is_array() || rec.size() != 3)
      throw SchemaError("vocabulary entry must be [id, count, tokens]");
    std::int64_t id = detail::require_int(rec[0], "entry id");
    if (id != static_cast<std::int64_t>(next_id))
      throw SchemaError("entry ids must be dense and ascending from 1");
    std::int64_t count = detail::require_int(rec[1], "entry count");
    if (count < 0) throw NumericError("entry count must be >= 0");
    if (!rec[2].is_array() || rec[2].empty())
      throw SchemaError("entry tokens must be a non-empty array");
    std::vector<TokenId> tokens;
    for (const json& t : rec[2]) {
      if (!t.is_string() || t.get<std::string>().empty())
        throw SchemaError("entry token must be a non-empty string");
      tokens.push_back(model.vocab.tokens().intern(t.get<std::string>()));
    }
    try {
      model.vocab.add(std::move(tokens), static_cast<std::uint64_t>(count));
    } catch (const std::invalid_argument&) {
      throw SchemaError("duplicate vocabulary entry at id " + std::to_string(id));
    }
    ++next_id;
  }
  std::int64_t total_tokens =
      detail::require_int(detail::require_key(vocab_obj, "total_tokens", "vocabulary"), "total_tokens");
  if (total_tokens < 0) throw NumericError("total_tokens must be >= 0");
  model.vocab.set_total_tokens(static_cast<std::uint64_t>(total_tokens));
  std::int64_t unk_id =
      detail::require_int(detail::require_key(vocab_obj, "unk_id", "vocabulary"), "unk_id");
  if (unk_id < 1 || unk_id >= static_cast<std::int64_t>(model.vocab.id_bound()))
    throw SchemaError("unk_id out of range");
  if (model.vocab.canonical(static_cast<EntryId>(unk_id)) != kUnkSurface)
    throw SchemaError("unk_id does not name the reserved UNK entry");
  model.vocab.set_unk(static_cast<EntryId>(unk_id));

  for (EntryId e = 1; e < model.vocab.id_bound(); ++e) {
    const Entry& entry = model.vocab.entry(e);
    if (entry.tokens.size() > 1 &&
        entry.count < static_cast<std::uint64_t>(model.config.min_count))
      throw NumericError("multi-token entry " + std::to_string(e) + " below min_count");
    if (entry.count == 0 && e != model.vocab.unk())
      throw NumericError("entry " + std::to_string(e) + " has zero count");
  }

  const json& vectors = detail::require_key(root, "class_vectors", "root");
  if (!vectors.is_array()) throw SchemaError("class_vectors must be an array");
  model.class_vectors.resize(model.vocab.id_bound());
  std::int64_t prev_vec_id = 0;
  for (const json& rec : vectors) {
    if (!rec.is_array() || rec.size() != 2)
      throw SchemaError("class vector must be [entry, components]");
    std::int64_t e = detail::require_int(rec[0], "class vector entry");
    if (e <= prev_vec_id) throw SchemaError("class vector entries must be ascending");
    if (e < 1 || e >= static_cast<std::int64_t>(model.vocab.id_bound()))
      throw SchemaError("class vector entry out of range");
    prev_vec_id = e;
    if (!rec[1].is_array()) throw SchemaError("class vector components must be an array");
    if (rec[1].size() > static_cast<std::size_t>(model.config.top_k))
      throw SchemaError("class vector exceeds top_k components");
    std::vector<SimVector::Component> comps;
    std::int64_t prev_k = 0;
    for (const json& comp : rec[1]) {
      if (!comp.is_array() || comp.size() != 2)
        throw SchemaError("component must be [entry, score]");
      std::int64_t k = detail::require_int(comp[0], "component entry");
      if (k <= prev_k) throw SchemaError("component ids must be ascending");
      if (k < 1 || k >= static_cast<std::int64_t>(model.vocab.id_bound()))
        throw SchemaError("component entry out of range");
      prev_k = k;
      double s = detail::require_finite(comp[1], "component score");
      if (!(s > 0.0)) throw NumericError("component score must be > 0");
      comps.emplace_back(static_cast<EntryId>(k), s);
    }
    SimVector v = SimVector::from_sorted(std::move(comps));
    if (v.value(static_cast<EntryId>(e)) != 1.0)
      throw SchemaError("class vector for entry " + std::to_string(e) +
                        " lacks the unit self component");
    model.class_vectors[static_cast<EntryId>(e)] = std::move(v);
  }

  const json& pairs = detail::require_key(root, "pair_table", "root");
  if (!pairs.is_array()) throw SchemaError("pair_table must be an array");
  std::uint64_t prev_pair = 0;
  bool first_pair = true;
  for (const json& rec : pairs) {
    if (!rec.is_array() || rec.size() != 4)
      throw SchemaError("pair record must be [left, right, entry, mi]");
    std::int64_t i = detail::require_int(rec[0], "pair left");
    std::int64_t j = detail::require_int(rec[1], "pair right");
    std::int64_t k = detail::require_int(rec[2], "pair entry");
    auto in_range = [&](std::int64_t id) {
      return id >= 1 && id < static_cast<std::int64_t>(model.vocab.id_bound());
    };
    if (!in_range(i) || !in_range(j) || !in_range(k))
      throw SchemaError("pair record id out of range");
    std::uint64_t key = (static_cast<std::uint64_t>(i) << 32) | static_cast<std::uint64_t>(j);
    if (!first_pair && key <= prev_pair) throw SchemaError("pair records must be ascending");
    first_pair = false;
    prev_pair = key;
    double mi = detail::require_finite(rec[3], "pair mi");
    if (mi < 0.0) throw NumericError("pair mi must be >= 0");
    const auto& lt = model.vocab.entry(static_cast<EntryId>(i)).tokens;
    const auto& rt = model.vocab.entry(static_cast<EntryId>(j)).tokens;
    const auto& kt = model.vocab.entry(static_cast<EntryId>(k)).tokens;
    if (kt.size() != lt.size() + rt.size() ||
        !std::equal(lt.begin(), lt.end(), kt.begin()) ||
        !std::equal(rt.begin(), rt.end(), kt.begin() + lt.size()))
      throw SchemaError("pair target is not the concatenation of its parts");
    model.pairs.insert(static_cast<EntryId>(i), static_cast<EntryId>(j),
                       static_cast<EntryId>(k), mi);
  }
  model.pairs.finalize();

  const json& stats = detail::require_key(root, "stats_summary", "root");
  detail::require_only_keys(stats, {"distinct_features", "grand_total"}, "stats_summary");
  std::int64_t df = detail::require_int(detail::require_key(stats, "distinct_features", "stats_summary"),
                                        "distinct_features");
  std::int64_t gt = detail::require_int(detail::require_key(stats, "grand_total", "stats_summary"),
                                        "grand_total");
  if (df < 0 || gt < 0) throw NumericError("stats_summary counts must be >= 0");
  model.stats = StatsSummary{static_cast<std::uint64_t>(gt), static_cast<std::uint64_t>(df)};

  return model;
}

inline Model load_model(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ModelIoError("cannot open for reading: " + path);
  std::ostringstream buffer;
  buffer << file.rdbuf();
  if (file.bad()) throw ModelIoError("read failed: " + path);
  return parse_model(buffer.str());
}

}  // namespace vecgram
