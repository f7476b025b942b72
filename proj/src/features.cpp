#include "sentiscope/features.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace sentiscope {

void FeatureConfig::validate() const {
  if (min_df < 1) throw ConfigError("min_df must be >= 1");
  if (max_features && *max_features < 1) {
    throw ConfigError("max_features must be >= 1 when set");
  }
}

std::optional<double> SparseVector::find(std::int32_t feature) const {
  auto it = std::lower_bound(entries.begin(), entries.end(), feature,
                             [](const auto& entry, std::int32_t f) { return entry.first < f; });
  if (it == entries.end() || it->first != feature) return std::nullopt;
  return it->second;
}

double SparseVector::norm() const {
  double sum = 0.0;
  for (const auto& [index, value] : entries) sum += value * value;
  return std::sqrt(sum);
}

std::optional<std::int32_t> TfIdfModel::term_index(std::string_view term) const {
  auto it = std::lower_bound(terms.begin(), terms.end(), term);
  if (it == terms.end() || *it != term) return std::nullopt;
  return static_cast<std::int32_t>(it - terms.begin());
}

TfIdfModel fit_tfidf(std::span<const TokenList> train_docs, const FeatureConfig& config) {
  config.validate();
  if (train_docs.empty()) throw EmptyCorpus("tf-idf fit needs at least one document");

  std::map<std::string, std::int64_t> df;
  for (const auto& doc : train_docs) {
    std::set<std::string_view> unique(doc.begin(), doc.end());
    for (auto term : unique) df[std::string(term)] += 1;
  }

  std::vector<std::pair<std::string, std::int64_t>> kept;
  for (const auto& [term, count] : df) {
    if (count >= config.min_df) kept.emplace_back(term, count);
  }
  if (kept.empty()) {
    throw EmptyVocabulary("no term reaches min_df = " + std::to_string(config.min_df));
  }

  if (config.max_features && kept.size() > static_cast<std::size_t>(*config.max_features)) {
    std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    kept.resize(static_cast<std::size_t>(*config.max_features));
    std::sort(kept.begin(), kept.end());  // back to lexicographic index order
  }

  TfIdfModel model;
  model.config = config;
  model.n_train_docs = static_cast<std::int64_t>(train_docs.size());
  model.terms.reserve(kept.size());
  model.document_frequency.reserve(kept.size());
  model.idf.reserve(kept.size());
  for (auto& [term, count] : kept) {
    model.terms.push_back(std::move(term));
    model.document_frequency.push_back(count);
    model.idf.push_back(
        std::log((1.0 + static_cast<double>(model.n_train_docs)) /
                 (1.0 + static_cast<double>(count))) +
        1.0);
  }
  return model;
}

SparseVector transform(const TokenList& doc, const TfIdfModel& model) {
  std::map<std::int32_t, std::int64_t> counts;
  for (const auto& token : doc) {
    if (auto index = model.term_index(token)) counts[*index] += 1;
  }

  SparseVector v;
  v.entries.reserve(counts.size());
  for (const auto& [index, count] : counts) {
    double tf = model.config.sublinear_tf ? 1.0 + std::log(static_cast<double>(count))
                                          : static_cast<double>(count);
    v.entries.emplace_back(index, tf * model.idf[static_cast<std::size_t>(index)]);
  }

  double length = v.norm();
  if (length > 0.0) {
    for (auto& [index, value] : v.entries) value /= length;
  }
  return v;
}

std::pair<TfIdfModel, std::vector<SparseVector>> fit_transform(
    std::span<const TokenList> train_docs, const FeatureConfig& config) {
  TfIdfModel model = fit_tfidf(train_docs, config);
  std::vector<SparseVector> vectors;
  vectors.reserve(train_docs.size());
  for (const auto& doc : train_docs) vectors.push_back(transform(doc, model));
  return {std::move(model), std::move(vectors)};
}

}  // namespace sentiscope
