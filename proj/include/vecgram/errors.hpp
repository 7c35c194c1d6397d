#pragma once

#include <stdexcept>
#include <string>

namespace vecgram {

struct OutOfVocabularyError : std::runtime_error {
  explicit OutOfVocabularyError(const std::string& what)
      : std::runtime_error("out of vocabulary: " + what) {}
};

struct NoContextsError : std::runtime_error {
  explicit NoContextsError(const std::string& what)
      : std::runtime_error("no contexts: " + what) {}
};

struct UnknownFeatureError : std::runtime_error {
  explicit UnknownFeatureError(const std::string& what)
      : std::runtime_error("unknown feature: " + what) {}
};

struct EmptyInputError : std::invalid_argument {
  EmptyInputError() : std::invalid_argument("empty input") {}
};

// Model file problems are kept apart so callers can tell a stale file from a
// corrupt one.
struct ModelIoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VersionError : ModelIoError {
  explicit VersionError(const std::string& what)
      : ModelIoError("version mismatch: " + what) {}
};

struct SchemaError : ModelIoError {
  explicit SchemaError(const std::string& what)
      : ModelIoError("schema: " + what) {}
};

struct NumericError : ModelIoError {
  explicit NumericError(const std::string& what)
      : ModelIoError("corrupt numerics: " + what) {}
};

struct GrammarError : std::runtime_error {
  explicit GrammarError(const std::string& what)
      : std::runtime_error("grammar: " + what) {}
};

}  // namespace vecgram
