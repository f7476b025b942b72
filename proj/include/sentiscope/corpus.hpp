#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "sentiscope/errors.hpp"

namespace sentiscope {

// Class index order is fixed; it doubles as the classifier's label encoding
// and happens to coincide with lexicographic order of the names.
enum class Sentiment : int { negative = 0, neutral = 1, positive = 2 };

inline constexpr int kNumSentiments = 3;

const std::array<std::string, kNumSentiments>& sentiment_names();
std::string_view to_string(Sentiment s);
// Case-insensitive; returns nullopt for anything that is not one of the
// three class names.
std::optional<Sentiment> sentiment_from_string(std::string_view text);

struct RawComment {
  std::string id;
  std::string text;
  Sentiment sentiment = Sentiment::negative;
  std::optional<std::string> emotion;
};

struct LabeledCorpus {
  std::vector<RawComment> documents;  // file order, stable
  std::array<std::int64_t, kNumSentiments> label_counts{};

  // Recomputes label_counts and checks document invariants (unique non-empty
  // ids, non-blank text).
  static LabeledCorpus from_documents(std::vector<RawComment> docs);

  std::int64_t size() const { return static_cast<std::int64_t>(documents.size()); }
};

enum class CorpusFormat { csv, jsonl };

// CSV needs header columns "text" and "sentiment"; "id" and "emotion" are
// optional, unknown columns are ignored. JSONL needs one object per line
// with the same keys. Rows without an id get "row-<1-based line number>".
// Errors carry the offending line number in their message.
LabeledCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format);

struct LabelShare {
  std::int64_t count = 0;
  double fraction = 0.0;
};

// Only classes that actually occur are present in the result.
std::map<Sentiment, LabelShare> label_distribution(const LabeledCorpus& corpus);

struct SplitSpec {
  double test_fraction = 0.2;
  std::uint64_t seed = 0;
  bool stratified = true;

  void validate() const;  // throws ConfigError
};

struct SplitResult {
  LabeledCorpus train;
  LabeledCorpus test;
};

// Seeded, reproducible split. Stratified mode draws
// max(1, round(count_c * test_fraction)) test documents from every class
// with at least 2 documents (classes with a single document stay in train).
// Both sides keep the original document order.
SplitResult split(const LabeledCorpus& corpus, const SplitSpec& spec);

// Random oversampling to the majority class count. Duplicates keep the
// source document's text/label and get ids suffixed "-dup1", "-dup2", ...
LabeledCorpus oversample(const LabeledCorpus& corpus, std::uint64_t seed);

// Normalized JSONL (sorted keys, one document per line); reloading the
// output reproduces it byte for byte.
void write_jsonl(const LabeledCorpus& corpus, std::ostream& out);

}  // namespace sentiscope
