#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sentiscope/errors.hpp"
#include "sentiscope/preprocess.hpp"

namespace sentiscope {

struct FeatureConfig {
  int min_df = 2;
  std::optional<int> max_features = 5000;
  bool sublinear_tf = false;

  void validate() const;  // throws ConfigError
};

// Entries sorted by feature index, values never zero. A document with no
// in-vocabulary token is the empty vector.
struct SparseVector {
  std::vector<std::pair<std::int32_t, double>> entries;

  bool empty() const { return entries.empty(); }
  std::optional<double> find(std::int32_t feature) const;
  double norm() const;
};

struct TfIdfModel {
  std::vector<std::string> terms;  // ascending lexicographic; index = column
  std::vector<std::int64_t> document_frequency;
  std::vector<double> idf;  // ln((1 + n_docs) / (1 + df)) + 1
  std::int64_t n_train_docs = 0;
  FeatureConfig config;

  int vocab_size() const { return static_cast<int>(terms.size()); }
  std::optional<std::int32_t> term_index(std::string_view term) const;
};

// Builds the vocabulary from tokenized documents: terms with df >= min_df,
// truncated to max_features by highest df (ties lexicographic), indices in
// ascending lexicographic term order. Permuting the documents yields an
// identical model.
TfIdfModel fit_tfidf(std::span<const TokenList> train_docs, const FeatureConfig& config);

// tf * idf (or (1 + ln tf) * idf with sublinear_tf), L2-normalized.
// Out-of-vocabulary tokens are ignored.
SparseVector transform(const TokenList& doc, const TfIdfModel& model);

std::pair<TfIdfModel, std::vector<SparseVector>> fit_transform(
    std::span<const TokenList> train_docs, const FeatureConfig& config);

}  // namespace sentiscope
