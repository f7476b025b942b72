#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sentiscope/corpus.hpp"
#include "sentiscope/errors.hpp"
#include "sentiscope/preprocess.hpp"

namespace sentiscope {

struct QuantileSummary {
  std::int64_t count = 0;
  double mean = 0.0;
  double stddev = 0.0;  // population
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
};

// Inverse-ECDF quantile with midpoint interpolation: with h = n*p, an
// integer h in [1, n-1] averages the neighbors sorted[h-1] and sorted[h],
// anything else takes sorted[floor(h)] (clamped). [1,2,3,4] -> q1 1.5,
// median 2.5, q3 3.5.
double quantile_midpoint(const std::vector<double>& sorted_values, double p);

QuantileSummary summarize(std::vector<double> values);

struct LengthStatsEntry {
  QuantileSummary chars;   // Unicode codepoints of the raw text
  QuantileSummary tokens;  // token count after full preprocessing
};

// Only classes with at least one document appear.
std::map<Sentiment, LengthStatsEntry> length_stats(const LabeledCorpus& corpus,
                                                   const PreprocessConfig& config);

struct NgramRow {
  std::string ngram;
  std::int64_t count = 0;
};

// Rows sorted by count descending, ties lexicographically ascending.
struct NgramTable {
  int n = 1;
  std::string scope;  // "overall", a class name, or "emotion:<label>"
  std::vector<NgramRow> rows;
};

// n = 1 or 2 (bigrams never cross document boundaries); top k rows per
// scope. per_sentiment emits one table per class, else one overall table.
std::vector<NgramTable> top_ngrams(const LabeledCorpus& corpus,
                                   const PreprocessConfig& config, int n, int k,
                                   bool per_sentiment);

struct Crosstab {
  std::vector<std::string> emotions;  // sorted ascending
  std::vector<std::array<std::int64_t, kNumSentiments>> counts;  // per emotion
};

// Documents without an emotion label are skipped; throws NoEmotionLabels if
// none carries one.
Crosstab emotion_sentiment_crosstab(const LabeledCorpus& corpus);

enum class FreqScope { overall, per_sentiment, per_emotion };

// Full unigram frequency tables (word-cloud input); same row ordering as
// top_ngrams. per_emotion covers only emotion-labeled documents and is empty
// when there are none.
std::vector<NgramTable> word_frequencies(const LabeledCorpus& corpus,
                                         const PreprocessConfig& config,
                                         FreqScope scope);

struct EdaReport {
  std::map<Sentiment, LabelShare> label_distribution;
  std::map<std::string, std::int64_t> emotion_distribution;  // empty when unlabeled
  std::optional<Crosstab> crosstab;
  std::map<Sentiment, LengthStatsEntry> lengths;
  std::vector<NgramTable> unigrams;  // overall + per class
  std::vector<NgramTable> bigrams;   // overall + per class
  std::vector<NgramTable> frequencies;  // overall + per class + per emotion
};

EdaReport build_eda_report(const LabeledCorpus& corpus,
                           const PreprocessConfig& config, int top_n);

std::string eda_report_to_json(const EdaReport& report);

// CSV with header "scope,ngram,count".
std::string ngram_tables_to_csv(std::span<const NgramTable> tables);

}  // namespace sentiscope
