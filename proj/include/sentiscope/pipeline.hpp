#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sentiscope/corpus.hpp"
#include "sentiscope/errors.hpp"
#include "sentiscope/features.hpp"
#include "sentiscope/gbdt.hpp"
#include "sentiscope/preprocess.hpp"

namespace sentiscope {

inline constexpr std::string_view kPipelineFormatVersion = "sentiscope-1";

struct PipelineModel {
  std::string format_version{kPipelineFormatVersion};
  std::vector<std::string> class_names;  // index = gbdt class id
  PreprocessConfig preprocess;
  TfIdfModel tfidf;
  GbdtModel gbdt;
};

struct TrainLog {
  std::vector<double> round_logloss;
  double wall_seconds = 0.0;
};

struct PipelineTrainResult {
  PipelineModel model;
  TrainLog log;
};

// preprocess -> tf-idf fit -> gbdt train on the same documents.
PipelineTrainResult train_pipeline(const LabeledCorpus& train,
                                   const PreprocessConfig& preprocess_config,
                                   const FeatureConfig& feature_config,
                                   const TrainConfig& train_config);

struct Prediction {
  std::string label;
  std::vector<double> probabilities;  // class_names order, sums to 1
};

// A text with no in-vocabulary token yields uniform probabilities and the
// first class name.
Prediction predict(const PipelineModel& model, std::string_view text);

// Single JSON document with keys format_version, class_names, preprocess,
// tfidf, gbdt. Reals keep full round-trip precision: a loaded model predicts
// bit-identically.
void save_pipeline(const PipelineModel& model, const std::filesystem::path& path);
PipelineModel load_pipeline(const std::filesystem::path& path);

std::string pipeline_to_json(const PipelineModel& model);
PipelineModel pipeline_from_json(std::string_view text);

}  // namespace sentiscope
