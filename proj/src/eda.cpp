#include "sentiscope/eda.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"
#include "sentiscope/csv.hpp"

namespace sentiscope {

namespace {

std::int64_t codepoint_count(std::string_view utf8) {
  std::int64_t count = 0;
  for (unsigned char c : utf8) {
    if ((c & 0xC0) != 0x80) ++count;  // skip UTF-8 continuation bytes
  }
  return count;
}

std::vector<NgramRow> sorted_rows(const std::map<std::string, std::int64_t>& counts) {
  std::vector<NgramRow> rows;
  rows.reserve(counts.size());
  for (const auto& [ngram, count] : counts) rows.push_back({ngram, count});
  std::stable_sort(rows.begin(), rows.end(), [](const NgramRow& a, const NgramRow& b) {
    if (a.count != b.count) return a.count > b.count;
    return a.ngram < b.ngram;
  });
  return rows;
}

void count_ngrams(const TokenList& tokens, int n, std::map<std::string, std::int64_t>& counts) {
  if (n == 1) {
    for (const auto& token : tokens) counts[token] += 1;
    return;
  }
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    counts[tokens[i] + " " + tokens[i + 1]] += 1;
  }
}

nlohmann::json summary_to_json(const QuantileSummary& s) {
  return {
      {"count", s.count}, {"mean", s.mean},     {"stddev", s.stddev}, {"min", s.min},
      {"q1", s.q1},       {"median", s.median}, {"q3", s.q3},         {"max", s.max},
  };
}

nlohmann::json tables_to_json(const std::vector<NgramTable>& tables) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& table : tables) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : table.rows) {
      rows.push_back(nlohmann::json::array({row.ngram, row.count}));
    }
    out[table.scope] = std::move(rows);
  }
  return out;
}

}  // namespace

double quantile_midpoint(const std::vector<double>& sorted_values, double p) {
  const auto n = static_cast<double>(sorted_values.size());
  double h = p * n;
  double floor_h = std::floor(h);
  if (h == floor_h) {
    auto k = static_cast<std::size_t>(h);
    if (k >= 1 && k < sorted_values.size()) {
      return 0.5 * (sorted_values[k - 1] + sorted_values[k]);
    }
    if (k == 0) return sorted_values.front();
    return sorted_values.back();
  }
  auto index = static_cast<std::size_t>(floor_h);
  index = std::min(index, sorted_values.size() - 1);
  return sorted_values[index];
}

QuantileSummary summarize(std::vector<double> values) {
  QuantileSummary s;
  s.count = static_cast<std::int64_t>(values.size());
  if (values.empty()) return s;
  std::sort(values.begin(), values.end());

  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - s.mean) * (v - s.mean);
  s.stddev = std::sqrt(var / static_cast<double>(values.size()));

  s.min = values.front();
  s.max = values.back();
  s.q1 = quantile_midpoint(values, 0.25);
  s.median = quantile_midpoint(values, 0.5);
  s.q3 = quantile_midpoint(values, 0.75);
  return s;
}

std::map<Sentiment, LengthStatsEntry> length_stats(const LabeledCorpus& corpus,
                                                   const PreprocessConfig& config) {
  if (corpus.documents.empty()) throw EmptyCorpus("length stats of an empty corpus");
  config.validate();

  std::map<Sentiment, std::vector<double>> chars, tokens;
  for (const auto& doc : corpus.documents) {
    chars[doc.sentiment].push_back(static_cast<double>(codepoint_count(doc.text)));
    tokens[doc.sentiment].push_back(
        static_cast<double>(preprocess_document(doc.text, config).size()));
  }

  std::map<Sentiment, LengthStatsEntry> stats;
  for (auto& [sentiment, values] : chars) {
    stats[sentiment].chars = summarize(std::move(values));
    stats[sentiment].tokens = summarize(std::move(tokens[sentiment]));
  }
  return stats;
}

std::vector<NgramTable> top_ngrams(const LabeledCorpus& corpus,
                                   const PreprocessConfig& config, int n, int k,
                                   bool per_sentiment) {
  if (corpus.documents.empty()) throw EmptyCorpus("n-gram tables of an empty corpus");
  if (n != 1 && n != 2) throw BadN("n must be 1 or 2, got " + std::to_string(n));
  if (k < 1) throw BadN("top-k must be >= 1, got " + std::to_string(k));
  config.validate();

  std::vector<NgramTable> tables;
  if (per_sentiment) {
    std::array<std::map<std::string, std::int64_t>, kNumSentiments> counts;
    for (const auto& doc : corpus.documents) {
      count_ngrams(preprocess_document(doc.text, config), n,
                   counts[static_cast<std::size_t>(doc.sentiment)]);
    }
    for (int c = 0; c < kNumSentiments; ++c) {
      NgramTable table;
      table.n = n;
      table.scope = std::string(to_string(static_cast<Sentiment>(c)));
      table.rows = sorted_rows(counts[static_cast<std::size_t>(c)]);
      if (table.rows.size() > static_cast<std::size_t>(k)) table.rows.resize(k);
      tables.push_back(std::move(table));
    }
  } else {
    std::map<std::string, std::int64_t> counts;
    for (const auto& doc : corpus.documents) {
      count_ngrams(preprocess_document(doc.text, config), n, counts);
    }
    NgramTable table;
    table.n = n;
    table.scope = "overall";
    table.rows = sorted_rows(counts);
    if (table.rows.size() > static_cast<std::size_t>(k)) table.rows.resize(k);
    tables.push_back(std::move(table));
  }
  return tables;
}

Crosstab emotion_sentiment_crosstab(const LabeledCorpus& corpus) {
  if (corpus.documents.empty()) throw EmptyCorpus("crosstab of an empty corpus");

  std::map<std::string, std::array<std::int64_t, kNumSentiments>> counts;
  for (const auto& doc : corpus.documents) {
    if (!doc.emotion) continue;
    auto& row = counts.try_emplace(*doc.emotion).first->second;
    row[static_cast<std::size_t>(doc.sentiment)] += 1;
  }
  if (counts.empty()) throw NoEmotionLabels("no document carries an emotion label");

  Crosstab table;
  for (auto& [emotion, row] : counts) {
    table.emotions.push_back(emotion);
    table.counts.push_back(row);
  }
  return table;
}

std::vector<NgramTable> word_frequencies(const LabeledCorpus& corpus,
                                         const PreprocessConfig& config, FreqScope scope) {
  if (corpus.documents.empty()) throw EmptyCorpus("word frequencies of an empty corpus");
  config.validate();

  std::vector<NgramTable> tables;
  switch (scope) {
    case FreqScope::overall: {
      std::map<std::string, std::int64_t> counts;
      for (const auto& doc : corpus.documents) {
        count_ngrams(preprocess_document(doc.text, config), 1, counts);
      }
      tables.push_back({1, "overall", sorted_rows(counts)});
      break;
    }
    case FreqScope::per_sentiment: {
      std::array<std::map<std::string, std::int64_t>, kNumSentiments> counts;
      for (const auto& doc : corpus.documents) {
        count_ngrams(preprocess_document(doc.text, config), 1,
                     counts[static_cast<std::size_t>(doc.sentiment)]);
      }
      for (int c = 0; c < kNumSentiments; ++c) {
        tables.push_back({1, std::string(to_string(static_cast<Sentiment>(c))),
                          sorted_rows(counts[static_cast<std::size_t>(c)])});
      }
      break;
    }
    case FreqScope::per_emotion: {
      std::map<std::string, std::map<std::string, std::int64_t>> counts;
      for (const auto& doc : corpus.documents) {
        if (!doc.emotion) continue;
        count_ngrams(preprocess_document(doc.text, config), 1, counts[*doc.emotion]);
      }
      for (auto& [emotion, table_counts] : counts) {
        tables.push_back({1, "emotion:" + emotion, sorted_rows(table_counts)});
      }
      break;
    }
  }
  return tables;
}

EdaReport build_eda_report(const LabeledCorpus& corpus, const PreprocessConfig& config,
                           int top_n) {
  EdaReport report;
  report.label_distribution = label_distribution(corpus);
  for (const auto& doc : corpus.documents) {
    if (doc.emotion) report.emotion_distribution[*doc.emotion] += 1;
  }
  if (!report.emotion_distribution.empty()) {
    report.crosstab = emotion_sentiment_crosstab(corpus);
  }
  report.lengths = length_stats(corpus, config);

  report.unigrams = top_ngrams(corpus, config, 1, top_n, false);
  auto per_class = top_ngrams(corpus, config, 1, top_n, true);
  report.unigrams.insert(report.unigrams.end(), std::make_move_iterator(per_class.begin()),
                         std::make_move_iterator(per_class.end()));

  report.bigrams = top_ngrams(corpus, config, 2, top_n, false);
  per_class = top_ngrams(corpus, config, 2, top_n, true);
  report.bigrams.insert(report.bigrams.end(), std::make_move_iterator(per_class.begin()),
                        std::make_move_iterator(per_class.end()));

  report.frequencies = word_frequencies(corpus, config, FreqScope::overall);
  auto by_sentiment = word_frequencies(corpus, config, FreqScope::per_sentiment);
  report.frequencies.insert(report.frequencies.end(),
                            std::make_move_iterator(by_sentiment.begin()),
                            std::make_move_iterator(by_sentiment.end()));
  auto by_emotion = word_frequencies(corpus, config, FreqScope::per_emotion);
  report.frequencies.insert(report.frequencies.end(),
                            std::make_move_iterator(by_emotion.begin()),
                            std::make_move_iterator(by_emotion.end()));
  return report;
}

std::string eda_report_to_json(const EdaReport& report) {
  nlohmann::json distribution = nlohmann::json::object();
  for (const auto& [sentiment, share] : report.label_distribution) {
    distribution[std::string(to_string(sentiment))] = {{"count", share.count},
                                                       {"fraction", share.fraction}};
  }

  nlohmann::json j;
  j["label_distribution"] = std::move(distribution);

  if (!report.emotion_distribution.empty()) {
    j["emotion_distribution"] = report.emotion_distribution;
  }
  if (report.crosstab) {
    nlohmann::json crosstab = nlohmann::json::object();
    for (std::size_t e = 0; e < report.crosstab->emotions.size(); ++e) {
      nlohmann::json row = nlohmann::json::object();
      for (int c = 0; c < kNumSentiments; ++c) {
        auto count = report.crosstab->counts[e][static_cast<std::size_t>(c)];
        if (count > 0) row[std::string(to_string(static_cast<Sentiment>(c)))] = count;
      }
      crosstab[report.crosstab->emotions[e]] = std::move(row);
    }
    j["emotion_sentiment_crosstab"] = std::move(crosstab);
  }

  nlohmann::json lengths = nlohmann::json::object();
  for (const auto& [sentiment, entry] : report.lengths) {
    lengths[std::string(to_string(sentiment))] = {
        {"chars", summary_to_json(entry.chars)},
        {"tokens", summary_to_json(entry.tokens)},
    };
  }
  j["length_stats"] = std::move(lengths);

  j["ngram_tables"] = {{"unigrams", tables_to_json(report.unigrams)},
                       {"bigrams", tables_to_json(report.bigrams)}};
  j["word_frequencies"] = tables_to_json(report.frequencies);
  return j.dump(2) + "\n";
}

std::string ngram_tables_to_csv(std::span<const NgramTable> tables) {
  std::ostringstream out;
  out << "scope,ngram,count\n";
  for (const auto& table : tables) {
    for (const auto& row : table.rows) {
      out << csv_escape(table.scope) << ',' << csv_escape(row.ngram) << ',' << row.count
          << '\n';
    }
  }
  return out.str();
}

}  // namespace sentiscope
