#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sentiscope/corpus.hpp"
#include "sentiscope/errors.hpp"

namespace sentiscope {

struct ConfusionMatrix {
  std::vector<std::string> class_names;
  std::vector<std::vector<std::int64_t>> counts;  // rows = true, cols = predicted

  std::int64_t total() const;
};

ConfusionMatrix confusion_matrix(std::span<const std::string> true_labels,
                                 std::span<const std::string> predicted_labels,
                                 std::vector<std::string> class_names);

struct ClassMetrics {
  std::string class_name;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  std::int64_t support = 0;
};

struct MetricsReport {
  double accuracy = 0.0;
  std::vector<ClassMetrics> per_class;
  double macro_f1 = 0.0;     // unweighted mean over all classes
  double weighted_f1 = 0.0;  // support-weighted mean
};

// Precision = diag/colsum, recall = diag/rowsum, f1 harmonic; every 0/0 is 0.
MetricsReport compute_metrics(const ConfusionMatrix& matrix);

// Predicts the most frequent training label for every test document
// (ties: lexicographically smallest class name).
MetricsReport majority_baseline(const LabeledCorpus& train, const LabeledCorpus& test);

// JSON with keys accuracy, per_class, macro_f1, weighted_f1.
std::string metrics_to_json(const MetricsReport& report);

// CSV with a leading header row and column of class names.
std::string confusion_to_csv(const ConfusionMatrix& matrix);

}  // namespace sentiscope
