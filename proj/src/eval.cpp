#include "sentiscope/eval.hpp"

#include <algorithm>
#include <sstream>

#include "json.hpp"
#include "sentiscope/csv.hpp"

namespace sentiscope {

namespace {

double safe_ratio(double numerator, double denominator) {
  return denominator == 0.0 ? 0.0 : numerator / denominator;
}

}  // namespace

std::int64_t ConfusionMatrix::total() const {
  std::int64_t sum = 0;
  for (const auto& row : counts) {
    for (auto c : row) sum += c;
  }
  return sum;
}

ConfusionMatrix confusion_matrix(std::span<const std::string> true_labels,
                                 std::span<const std::string> predicted_labels,
                                 std::vector<std::string> class_names) {
  if (true_labels.size() != predicted_labels.size()) {
    throw LengthMismatch("got " + std::to_string(true_labels.size()) + " true labels but " +
                         std::to_string(predicted_labels.size()) + " predictions");
  }
  if (true_labels.empty()) throw EmptyMatrix("no labels to evaluate");

  ConfusionMatrix matrix;
  matrix.class_names = std::move(class_names);
  matrix.counts.assign(matrix.class_names.size(),
                       std::vector<std::int64_t>(matrix.class_names.size(), 0));
  auto index_of = [&](const std::string& label) {
    auto it = std::find(matrix.class_names.begin(), matrix.class_names.end(), label);
    if (it == matrix.class_names.end()) {
      throw UnknownLabel("label \"" + label + "\" is not a known class");
    }
    return static_cast<std::size_t>(it - matrix.class_names.begin());
  };
  for (std::size_t i = 0; i < true_labels.size(); ++i) {
    matrix.counts[index_of(true_labels[i])][index_of(predicted_labels[i])] += 1;
  }
  return matrix;
}

MetricsReport compute_metrics(const ConfusionMatrix& matrix) {
  const std::size_t k = matrix.class_names.size();
  if (k == 0 || matrix.total() == 0) throw EmptyMatrix("confusion matrix is empty");

  MetricsReport report;
  std::int64_t diagonal = 0;
  double f1_sum = 0.0;
  double weighted_sum = 0.0;
  std::int64_t support_total = 0;
  for (std::size_t c = 0; c < k; ++c) {
    std::int64_t tp = matrix.counts[c][c];
    std::int64_t row_sum = 0, col_sum = 0;
    for (std::size_t j = 0; j < k; ++j) {
      row_sum += matrix.counts[c][j];
      col_sum += matrix.counts[j][c];
    }
    diagonal += tp;

    ClassMetrics m;
    m.class_name = matrix.class_names[c];
    m.support = row_sum;
    m.precision = safe_ratio(static_cast<double>(tp), static_cast<double>(col_sum));
    m.recall = safe_ratio(static_cast<double>(tp), static_cast<double>(row_sum));
    m.f1 = safe_ratio(2.0 * m.precision * m.recall, m.precision + m.recall);
    f1_sum += m.f1;
    weighted_sum += m.f1 * static_cast<double>(m.support);
    support_total += m.support;
    report.per_class.push_back(std::move(m));
  }
  report.accuracy = static_cast<double>(diagonal) / static_cast<double>(matrix.total());
  report.macro_f1 = f1_sum / static_cast<double>(k);
  report.weighted_f1 = weighted_sum / static_cast<double>(support_total);
  return report;
}

MetricsReport majority_baseline(const LabeledCorpus& train, const LabeledCorpus& test) {
  if (train.documents.empty() || test.documents.empty()) {
    throw EmptyCorpus("majority baseline needs non-empty train and test sets");
  }
  // Ties break toward the lexicographically smallest name, which is also
  // the lowest class index.
  int majority = 0;
  for (int c = 1; c < kNumSentiments; ++c) {
    if (train.label_counts[static_cast<std::size_t>(c)] >
        train.label_counts[static_cast<std::size_t>(majority)]) {
      majority = c;
    }
  }
  std::string predicted(to_string(static_cast<Sentiment>(majority)));

  std::vector<std::string> truth, prediction;
  truth.reserve(test.documents.size());
  prediction.assign(test.documents.size(), predicted);
  for (const auto& doc : test.documents) {
    truth.emplace_back(to_string(doc.sentiment));
  }
  std::vector<std::string> names(sentiment_names().begin(), sentiment_names().end());
  return compute_metrics(confusion_matrix(truth, prediction, std::move(names)));
}

std::string metrics_to_json(const MetricsReport& report) {
  nlohmann::json per_class = nlohmann::json::array();
  for (const auto& m : report.per_class) {
    per_class.push_back({
        {"class", m.class_name},
        {"precision", m.precision},
        {"recall", m.recall},
        {"f1", m.f1},
        {"support", m.support},
    });
  }
  nlohmann::json j{
      {"accuracy", report.accuracy},
      {"per_class", std::move(per_class)},
      {"macro_f1", report.macro_f1},
      {"weighted_f1", report.weighted_f1},
  };
  return j.dump(2) + "\n";
}

std::string confusion_to_csv(const ConfusionMatrix& matrix) {
  std::ostringstream out;
  for (const auto& name : matrix.class_names) out << ',' << csv_escape(name);
  out << '\n';
  for (std::size_t r = 0; r < matrix.counts.size(); ++r) {
    out << csv_escape(matrix.class_names[r]);
    for (auto count : matrix.counts[r]) out << ',' << count;
    out << '\n';
  }
  return out.str();
}

}  // namespace sentiscope
