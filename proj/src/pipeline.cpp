#include "sentiscope/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace sentiscope {

namespace {

nlohmann::json preprocess_to_json(const PreprocessConfig& config) {
  nlohmann::json j{
      {"lowercase", config.lowercase},
      {"strip_urls", config.strip_urls},
      {"strip_mentions", config.strip_mentions},
      {"min_token_len", config.min_token_len},
      {"enable_stemming", config.enable_stemming},
      {"stopwords", config.stopwords},
  };
  if (config.root_dictionary) j["root_dictionary"] = *config.root_dictionary;
  return j;
}

PreprocessConfig preprocess_from_json(const nlohmann::json& j) {
  PreprocessConfig config;
  config.lowercase = j.at("lowercase").get<bool>();
  config.strip_urls = j.at("strip_urls").get<bool>();
  config.strip_mentions = j.at("strip_mentions").get<bool>();
  config.min_token_len = j.at("min_token_len").get<int>();
  config.enable_stemming = j.at("enable_stemming").get<bool>();
  config.stopwords = j.at("stopwords").get<std::set<std::string>>();
  if (j.contains("root_dictionary")) {
    config.root_dictionary = j["root_dictionary"].get<std::set<std::string>>();
  } else {
    config.root_dictionary.reset();
  }
  return config;
}

nlohmann::json tfidf_to_json(const TfIdfModel& model) {
  nlohmann::json config{
      {"min_df", model.config.min_df},
      {"sublinear_tf", model.config.sublinear_tf},
  };
  if (model.config.max_features) config["max_features"] = *model.config.max_features;
  return {
      {"config", std::move(config)},
      {"n_train_docs", model.n_train_docs},
      {"terms", model.terms},
      {"document_frequency", model.document_frequency},
      {"idf", model.idf},
  };
}

TfIdfModel tfidf_from_json(const nlohmann::json& j) {
  TfIdfModel model;
  const auto& config = j.at("config");
  model.config.min_df = config.at("min_df").get<int>();
  model.config.sublinear_tf = config.at("sublinear_tf").get<bool>();
  if (config.contains("max_features")) {
    model.config.max_features = config["max_features"].get<int>();
  } else {
    model.config.max_features.reset();
  }
  model.n_train_docs = j.at("n_train_docs").get<std::int64_t>();
  model.terms = j.at("terms").get<std::vector<std::string>>();
  model.document_frequency = j.at("document_frequency").get<std::vector<std::int64_t>>();
  model.idf = j.at("idf").get<std::vector<double>>();
  if (model.terms.size() != model.document_frequency.size() ||
      model.terms.size() != model.idf.size()) {
    throw CorruptPayload("tfidf arrays have mismatched lengths");
  }
  if (!std::is_sorted(model.terms.begin(), model.terms.end())) {
    throw CorruptPayload("tfidf terms must be sorted");
  }
  return model;
}

}  // namespace

PipelineTrainResult train_pipeline(const LabeledCorpus& train,
                                   const PreprocessConfig& preprocess_config,
                                   const FeatureConfig& feature_config,
                                   const TrainConfig& train_config) {
  auto started = std::chrono::steady_clock::now();
  preprocess_config.validate();
  feature_config.validate();
  train_config.validate();
  if (train.documents.empty()) throw EmptyCorpus("cannot train on an empty corpus");

  std::vector<TokenList> docs;
  std::vector<int> labels;
  docs.reserve(train.documents.size());
  labels.reserve(train.documents.size());
  for (const auto& doc : train.documents) {
    docs.push_back(preprocess_document(doc.text, preprocess_config));
    labels.push_back(static_cast<int>(doc.sentiment));
  }

  auto [tfidf, vectors] = fit_transform(docs, feature_config);
  auto trained =
      train_gbdt(vectors, labels, kNumSentiments, tfidf.vocab_size(), train_config);

  PipelineTrainResult result;
  result.model.class_names.assign(sentiment_names().begin(), sentiment_names().end());
  result.model.preprocess = preprocess_config;
  result.model.tfidf = std::move(tfidf);
  result.model.gbdt = std::move(trained.model);
  result.log.round_logloss = std::move(trained.round_logloss);
  result.log.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return result;
}

Prediction predict(const PipelineModel& model, std::string_view text) {
  TokenList tokens = preprocess_document(text, model.preprocess);
  SparseVector v = transform(tokens, model.tfidf);
  Prediction prediction;
  if (v.empty()) {
    // No in-vocabulary token means the model has no evidence about this text.
    // Answer with the (uniform) base score instead of whatever the trees'
    // default directions happen to encode about absent features.
    prediction.probabilities = softmax(model.gbdt.base_score);
    prediction.label = model.class_names.front();
    return prediction;
  }
  prediction.probabilities = predict_proba(model.gbdt, v);
  prediction.label = model.class_names[static_cast<std::size_t>(predict_label(model.gbdt, v))];
  return prediction;
}

std::string pipeline_to_json(const PipelineModel& model) {
  nlohmann::json j{
      {"format_version", model.format_version},
      {"class_names", model.class_names},
      {"preprocess", preprocess_to_json(model.preprocess)},
      {"tfidf", tfidf_to_json(model.tfidf)},
      {"gbdt", nlohmann::json::parse(serialize_model(model.gbdt))},
  };
  return j.dump(2) + "\n";
}

PipelineModel pipeline_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CorruptPayload(std::string("model file is not valid json: ") + e.what());
  }
  try {
    if (!j.is_object() || !j.contains("format_version") || !j["format_version"].is_string()) {
      throw CorruptPayload("model file lacks format_version");
    }
    std::string version = j["format_version"].get<std::string>();
    if (version != kPipelineFormatVersion) {
      throw VersionMismatch("unsupported model format \"" + version + "\", expected \"" +
                            std::string(kPipelineFormatVersion) + "\"");
    }
    for (const char* key : {"class_names", "preprocess", "tfidf", "gbdt"}) {
      if (!j.contains(key)) {
        throw CorruptPayload(std::string("model file lacks section \"") + key + "\"");
      }
    }

    PipelineModel model;
    model.format_version = version;
    model.class_names = j["class_names"].get<std::vector<std::string>>();
    model.preprocess = preprocess_from_json(j["preprocess"]);
    model.tfidf = tfidf_from_json(j["tfidf"]);
    model.gbdt = deserialize_model(j["gbdt"].dump());

    if (model.class_names.size() != static_cast<std::size_t>(model.gbdt.n_classes)) {
      throw CorruptPayload("class_names length differs from the classifier's n_classes");
    }
    if (model.gbdt.feature_dim != model.tfidf.vocab_size()) {
      throw CorruptPayload("classifier feature_dim differs from the vocabulary size");
    }
    model.preprocess.validate();
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw CorruptPayload(std::string("malformed model file: ") + e.what());
  }
}

void save_pipeline(const PipelineModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open \"" + path.string() + "\" for writing");
  out << pipeline_to_json(model);
  out.flush();
  if (!out) throw IoFailure("failed writing \"" + path.string() + "\"");
}

PipelineModel load_pipeline(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open \"" + path.string() + "\" for reading");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return pipeline_from_json(buffer.str());
}

}  // namespace sentiscope
