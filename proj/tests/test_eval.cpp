#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "json.hpp"
#include "sentiscope/eval.hpp"
#include "sentiscope/rng.hpp"

using namespace sentiscope;
using sentiscope::test::doc;

namespace {

const std::vector<std::string> kTwo{"negative", "neutral"};
const std::vector<std::string> kThree{"negative", "neutral", "positive"};

ConfusionMatrix six_sample_matrix() {
  std::vector<std::string> truth{"negative", "negative", "negative",
                                 "neutral", "neutral", "positive"};
  std::vector<std::string> pred{"negative", "negative", "neutral",
                                "neutral", "neutral", "negative"};
  return confusion_matrix(truth, pred, kThree);
}

}  // namespace

TEST_CASE("confusion_matrix tallies true rows against predicted columns") {
  std::vector<std::string> truth{"negative", "negative", "neutral"};
  std::vector<std::string> pred{"negative", "neutral", "neutral"};
  auto cm = confusion_matrix(truth, pred, kTwo);
  CHECK(cm.counts == std::vector<std::vector<std::int64_t>>{{1, 1}, {0, 1}});
  CHECK(cm.total() == 3);
}

TEST_CASE("perfect and disjoint predictions hit the diagonal cases") {
  std::vector<std::string> truth{"negative", "neutral", "neutral"};
  auto perfect = confusion_matrix(truth, truth, kTwo);
  CHECK(perfect.counts == std::vector<std::vector<std::int64_t>>{{1, 0}, {0, 2}});

  std::vector<std::string> wrong{"neutral", "negative", "negative"};
  auto disjoint = confusion_matrix(truth, wrong, kTwo);
  CHECK(disjoint.counts[0][0] == 0);
  CHECK(disjoint.counts[1][1] == 0);
}

TEST_CASE("confusion_matrix validates its inputs") {
  std::vector<std::string> one{"negative"}, two{"negative", "neutral"};
  CHECK_THROWS_AS(confusion_matrix(one, two, kTwo), LengthMismatch);

  std::vector<std::string> alien{"sarcastic"};
  std::vector<std::string> ok{"negative"};
  CHECK_THROWS_AS(confusion_matrix(alien, ok, kTwo), UnknownLabel);
  CHECK_THROWS_AS(confusion_matrix(ok, alien, kTwo), UnknownLabel);
}

TEST_CASE("compute_metrics reproduces the hand-worked 6-sample case") {
  auto report = compute_metrics(six_sample_matrix());
  CHECK(report.accuracy == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  REQUIRE(report.per_class.size() == 3);

  const auto& neg = report.per_class[0];
  CHECK(neg.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(neg.recall == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(neg.f1 == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(neg.support == 3);

  const auto& neu = report.per_class[1];
  CHECK(neu.precision == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(neu.recall == 1.0);
  CHECK(neu.f1 == doctest::Approx(0.8).epsilon(1e-15));
  CHECK(neu.support == 2);

  // No positive predictions at all: the 0/0 rule pins everything to 0.
  const auto& pos = report.per_class[2];
  CHECK(pos.precision == 0.0);
  CHECK(pos.recall == 0.0);
  CHECK(pos.f1 == 0.0);
  CHECK(pos.support == 1);

  CHECK(report.macro_f1 == doctest::Approx(0.4888888888888889).epsilon(1e-15));
  CHECK(report.weighted_f1 == doctest::Approx(0.6).epsilon(1e-15));
}

TEST_CASE("a diagonal matrix scores a perfect classifier") {
  ConfusionMatrix cm;
  cm.class_names = kThree;
  cm.counts = {{4, 0, 0}, {0, 2, 0}, {0, 0, 3}};
  auto report = compute_metrics(cm);
  CHECK(report.accuracy == 1.0);
  CHECK(report.macro_f1 == 1.0);
  CHECK(report.weighted_f1 == 1.0);
}

TEST_CASE("the 131/29/5 diagonal over 223 samples lands near 74%") {
  ConfusionMatrix cm;
  cm.class_names = kThree;
  cm.counts = {{131, 10, 2}, {20, 29, 1}, {20, 5, 5}};
  REQUIRE(cm.total() == 223);
  auto report = compute_metrics(cm);
  CHECK(report.accuracy == doctest::Approx(165.0 / 223.0).epsilon(1e-15));
  CHECK(report.accuracy > 0.735);
  CHECK(report.accuracy < 0.745);
}

TEST_CASE("compute_metrics rejects an empty tally") {
  ConfusionMatrix cm;
  cm.class_names = kTwo;
  cm.counts = {{0, 0}, {0, 0}};
  CHECK_THROWS_AS(compute_metrics(cm), EmptyMatrix);
}

TEST_CASE("accuracy equals trace over total on random matrices") {
  SplitMix64 rng(808);
  for (int trial = 0; trial < 100; ++trial) {
    ConfusionMatrix cm;
    cm.class_names = kThree;
    std::int64_t trace = 0, total = 0;
    for (int r = 0; r < 3; ++r) {
      std::vector<std::int64_t> row;
      for (int c = 0; c < 3; ++c) row.push_back(static_cast<std::int64_t>(rng.below(20)));
      trace += row[static_cast<std::size_t>(r)];
      total += row[0] + row[1] + row[2];
      cm.counts.push_back(std::move(row));
    }
    if (total == 0) continue;
    auto report = compute_metrics(cm);
    CHECK(report.accuracy == doctest::Approx(static_cast<double>(trace) /
                                             static_cast<double>(total))
                                 .epsilon(1e-15));
    CHECK(report.accuracy >= 0.0);
    CHECK(report.macro_f1 >= 0.0);
    CHECK(report.macro_f1 <= 1.0);
    CHECK(report.weighted_f1 <= 1.0);
    CHECK(std::isfinite(report.weighted_f1));

    // Micro-averaged f1 collapses to accuracy for single-label problems.
    // Micro precision = trace / all predictions = micro recall.
    double micro = static_cast<double>(trace) / static_cast<double>(total);
    CHECK(report.accuracy == doctest::Approx(micro).epsilon(1e-15));
  }
}

TEST_CASE("permuting the class order leaves the aggregates unchanged") {
  auto cm = six_sample_matrix();
  auto base = compute_metrics(cm);

  // Swap classes 0 and 2 everywhere.
  ConfusionMatrix swapped;
  swapped.class_names = {"positive", "neutral", "negative"};
  swapped.counts = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) {
      int rr = (r == 0) ? 2 : (r == 2) ? 0 : 1;
      int cc = (c == 0) ? 2 : (c == 2) ? 0 : 1;
      swapped.counts[static_cast<std::size_t>(rr)][static_cast<std::size_t>(cc)] =
          cm.counts[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
    }
  }
  auto permuted = compute_metrics(swapped);
  CHECK(permuted.accuracy == base.accuracy);
  CHECK(permuted.macro_f1 == doctest::Approx(base.macro_f1).epsilon(1e-15));
  CHECK(permuted.weighted_f1 == doctest::Approx(base.weighted_f1).epsilon(1e-15));
  CHECK(permuted.per_class[0].f1 == base.per_class[2].f1);
  CHECK(permuted.per_class[2].f1 == base.per_class[0].f1);
}

TEST_CASE("majority_baseline predicts the dominant training label") {
  auto train = sentiscope::test::corpus_of({{"a", Sentiment::negative},
                                            {"b", Sentiment::negative},
                                            {"c", Sentiment::positive}});
  auto test_match = sentiscope::test::corpus_of(
      {{"x", Sentiment::negative}, {"y", Sentiment::negative}});
  CHECK(majority_baseline(train, test_match).accuracy == 1.0);

  auto test_miss = sentiscope::test::corpus_of({{"x", Sentiment::positive}});
  CHECK(majority_baseline(train, test_miss).accuracy == 0.0);

  CHECK_THROWS_AS(majority_baseline(LabeledCorpus{}, test_miss), EmptyCorpus);
  CHECK_THROWS_AS(majority_baseline(train, LabeledCorpus{}), EmptyCorpus);
}

TEST_CASE("majority ties resolve to the lexicographically smallest name") {
  // One negative, one positive: "negative" < "positive".
  auto train = sentiscope::test::corpus_of(
      {{"a", Sentiment::positive}, {"b", Sentiment::negative}});
  auto test = sentiscope::test::corpus_of(
      {{"x", Sentiment::negative}, {"y", Sentiment::positive}});
  auto report = majority_baseline(train, test);
  CHECK(report.accuracy == 0.5);
  CHECK(report.per_class[0].recall == 1.0);  // negative predicted throughout
  CHECK(report.per_class[2].recall == 0.0);
}

TEST_CASE("metrics_to_json exposes every field under stable keys") {
  auto report = compute_metrics(six_sample_matrix());
  auto j = nlohmann::json::parse(metrics_to_json(report));
  CHECK(j["accuracy"].get<double>() == doctest::Approx(2.0 / 3.0));
  CHECK(j["macro_f1"].get<double>() == doctest::Approx(0.4888888888888889));
  CHECK(j["weighted_f1"].get<double>() == doctest::Approx(0.6));
  REQUIRE(j["per_class"].size() == 3);
  CHECK(j["per_class"][0]["class"] == "negative");
  CHECK(j["per_class"][0]["support"] == 3);
  CHECK(j["per_class"][2]["f1"] == 0.0);
}

TEST_CASE("confusion_to_csv writes names on both axes") {
  auto csv = confusion_to_csv(six_sample_matrix());
  CHECK(csv ==
        ",negative,neutral,positive\n"
        "negative,2,1,0\n"
        "neutral,0,2,0\n"
        "positive,1,0,0\n");
}
