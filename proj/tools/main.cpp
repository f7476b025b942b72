#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sentiscope/cli_config.hpp"
#include "sentiscope/corpus.hpp"
#include "sentiscope/eda.hpp"
#include "sentiscope/errors.hpp"
#include "sentiscope/eval.hpp"
#include "sentiscope/pipeline.hpp"
#include "sentiscope/preprocess.hpp"

namespace fs = std::filesystem;
using namespace sentiscope;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitDegenerate = 3;

CorpusFormat detect_format(const fs::path& path, const std::string& forced) {
  if (forced == "csv") return CorpusFormat::csv;
  if (forced == "jsonl") return CorpusFormat::jsonl;
  return path.extension() == ".csv" ? CorpusFormat::csv : CorpusFormat::jsonl;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoFailure("cannot open \"" + path.string() + "\" for writing");
  out << content;
  out.flush();
  if (!out) throw IoFailure("failed writing \"" + path.string() + "\"");
}

// model.json -> model.<tag>.json, model -> model.<tag>.json
fs::path sibling_file(const fs::path& model_path, const std::string& tag) {
  fs::path out = model_path;
  out.replace_extension();
  out += "." + tag + ".json";
  return out;
}

fs::path sibling_csv(const fs::path& base_path, const std::string& tag) {
  fs::path out = base_path;
  out.replace_extension();
  out += "." + tag + ".csv";
  return out;
}

std::optional<std::uint64_t> env_seed() {
  const char* raw = std::getenv("SENTISCOPE_SEED");
  if (raw == nullptr || *raw == '\0') return std::nullopt;
  char* end = nullptr;
  unsigned long long value = std::strtoull(raw, &end, 10);
  if (end == nullptr || *end != '\0') {
    throw ConfigError("SENTISCOPE_SEED must be a non-negative integer");
  }
  return value;
}

void print_summary(const LabeledCorpus& corpus) {
  auto shares = label_distribution(corpus);
  std::printf("%lld documents\n", static_cast<long long>(corpus.size()));
  for (const auto& [sentiment, share] : shares) {
    std::printf("  %-8s %6lld (%.1f%%)\n", std::string(to_string(sentiment)).c_str(),
                static_cast<long long>(share.count), share.fraction * 100.0);
  }
}

struct CommonArgs {
  std::string corpus_path;
  std::string format;  // "", "csv", "jsonl"
  std::string stopwords_path;
};

LabeledCorpus load_from(const CommonArgs& args) {
  return load_corpus(args.corpus_path, detect_format(args.corpus_path, args.format));
}

int cmd_ingest(const std::string& input, const std::string& format, const std::string& out) {
  LabeledCorpus corpus = load_corpus(input, detect_format(input, format));
  std::ofstream sink(out, std::ios::binary);
  if (!sink) throw IoFailure("cannot open \"" + out + "\" for writing");
  write_jsonl(corpus, sink);
  sink.flush();
  if (!sink) throw IoFailure("failed writing \"" + out + "\"");
  print_summary(corpus);
  return kExitOk;
}

int cmd_eda(const CommonArgs& args, const std::string& out_dir, int top_n,
            bool skip_stemming) {
  LabeledCorpus corpus = load_from(args);
  PreprocessConfig config;
  if (!args.stopwords_path.empty()) config.stopwords = load_wordlist(args.stopwords_path);
  if (skip_stemming) config.enable_stemming = false;
  config.validate();

  EdaReport report = build_eda_report(corpus, config, top_n);
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "eda_report.json", eda_report_to_json(report));
  write_file(fs::path(out_dir) / "unigrams.csv", ngram_tables_to_csv(report.unigrams));
  write_file(fs::path(out_dir) / "bigrams.csv", ngram_tables_to_csv(report.bigrams));
  write_file(fs::path(out_dir) / "word_frequencies.csv",
             ngram_tables_to_csv(report.frequencies));
  std::printf("eda report written to %s\n", out_dir.c_str());
  return kExitOk;
}

int cmd_train(const CommonArgs& args, const std::string& config_path,
              const std::string& model_out, std::optional<std::uint64_t> seed_flag,
              bool do_oversample, const std::string& class_weight) {
  CliConfig config =
      config_path.empty() ? default_cli_config() : load_cli_config(config_path);
  if (!args.stopwords_path.empty()) {
    config.preprocess.stopwords = load_wordlist(args.stopwords_path);
    config.preprocess.validate();
  }

  // Seed precedence: flag, then config file, then SENTISCOPE_SEED, then 0.
  if (seed_flag) {
    config.split.seed = *seed_flag;
    config.train.seed = *seed_flag;
  } else {
    auto fallback = env_seed();
    if (fallback) {
      if (!config.has("split.seed")) config.split.seed = *fallback;
      if (!config.has("train.seed")) config.train.seed = *fallback;
    }
  }
  if (class_weight == "balanced") {
    config.train.class_weighting = TrainConfig::ClassWeighting::balanced;
  } else if (class_weight == "none") {
    config.train.class_weighting = TrainConfig::ClassWeighting::none;
  } else if (!class_weight.empty()) {
    throw ConfigError("--class-weight must be \"balanced\" or \"none\"");
  }

  LabeledCorpus corpus = load_from(args);
  SplitResult sides = split(corpus, config.split);
  LabeledCorpus train_side =
      do_oversample ? oversample(sides.train, config.train.seed) : std::move(sides.train);

  PipelineTrainResult trained =
      train_pipeline(train_side, config.preprocess, config.features, config.train);
  save_pipeline(trained.model, model_out);

  nlohmann::json log{
      {"round_logloss", trained.log.round_logloss},
      {"wall_seconds", trained.log.wall_seconds},
      {"train_documents", train_side.size()},
      {"test_documents", sides.test.size()},
  };
  write_file(sibling_file(model_out, "trainlog"), log.dump(2) + "\n");

  std::vector<std::string> truth, predicted;
  for (const auto& doc : sides.test.documents) {
    truth.emplace_back(to_string(doc.sentiment));
    predicted.push_back(predict(trained.model, doc.text).label);
  }
  auto matrix = confusion_matrix(truth, predicted, trained.model.class_names);
  auto report = compute_metrics(matrix);
  write_file(sibling_file(model_out, "metrics"), metrics_to_json(report));

  std::printf("holdout accuracy %.4f macro-F1 %.4f\n", report.accuracy, report.macro_f1);
  return kExitOk;
}

int cmd_evaluate(const CommonArgs& args, const std::string& model_path,
                 const std::string& out_path) {
  PipelineModel model = load_pipeline(model_path);
  LabeledCorpus corpus = load_from(args);

  for (const auto& doc : corpus.documents) {
    std::string label(to_string(doc.sentiment));
    if (std::find(model.class_names.begin(), model.class_names.end(), label) ==
        model.class_names.end()) {
      throw UnknownLabel("corpus label \"" + label + "\" is not among the model's classes");
    }
  }

  std::vector<std::string> truth, predicted;
  for (const auto& doc : corpus.documents) {
    truth.emplace_back(to_string(doc.sentiment));
    predicted.push_back(predict(model, doc.text).label);
  }
  auto matrix = confusion_matrix(truth, predicted, model.class_names);
  auto report = compute_metrics(matrix);
  write_file(out_path, metrics_to_json(report));
  write_file(sibling_csv(out_path, "confusion"), confusion_to_csv(matrix));

  std::printf("accuracy %.4f macro-F1 %.4f weighted-F1 %.4f\n", report.accuracy,
              report.macro_f1, report.weighted_f1);
  return kExitOk;
}

nlohmann::json prediction_to_json(const PipelineModel& model, const Prediction& p) {
  nlohmann::json probs = nlohmann::json::object();
  for (std::size_t k = 0; k < model.class_names.size(); ++k) {
    probs[model.class_names[k]] = p.probabilities[k];
  }
  return {{"label", p.label}, {"probabilities", std::move(probs)}};
}

int cmd_predict(const std::string& model_path, const std::string& text,
                const std::string& input_path) {
  PipelineModel model = load_pipeline(model_path);
  if (!text.empty() || input_path.empty()) {
    auto line = prediction_to_json(model, predict(model, text));
    std::printf("%s\n", line.dump().c_str());
    return kExitOk;
  }
  std::ifstream in(input_path, std::ios::binary);
  if (!in) throw IoFailure("cannot open \"" + input_path + "\" for reading");
  std::string doc;
  std::size_t line_no = 0;
  while (std::getline(in, doc)) {
    ++line_no;
    if (!doc.empty() && doc.back() == '\r') doc.pop_back();
    auto line = prediction_to_json(model, predict(model, doc));
    line["id"] = "line-" + std::to_string(line_no);
    std::printf("%s\n", line.dump().c_str());
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"sentiment classification toolkit for Indonesian text"};
  app.require_subcommand(1);

  CommonArgs common;

  auto* ingest = app.add_subcommand("ingest", "normalize a corpus to jsonl");
  std::string ingest_input, ingest_format, ingest_out;
  ingest->add_option("--input", ingest_input, "corpus file")->required();
  ingest->add_option("--format", ingest_format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  ingest->add_option("--out", ingest_out, "output jsonl path")->required();

  auto* eda = app.add_subcommand("eda", "exploratory corpus report");
  std::string eda_out;
  int top_n = 20;
  bool skip_stemming = false;
  eda->add_option("--corpus", common.corpus_path, "corpus file")->required();
  eda->add_option("--format", common.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  eda->add_option("--out", eda_out, "output directory")->required();
  eda->add_option("--top-n", top_n, "rows per n-gram table");
  eda->add_flag("--skip-stemming", skip_stemming, "report unstemmed tokens");
  eda->add_option("--stopwords", common.stopwords_path, "replacement stopword list");

  auto* train = app.add_subcommand("train", "train a sentiment pipeline");
  std::string config_path, model_out, class_weight;
  std::optional<std::uint64_t> seed_flag;
  bool do_oversample = false;
  train->add_option("--corpus", common.corpus_path, "corpus file")->required();
  train->add_option("--format", common.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  train->add_option("--config", config_path, "toml config file");
  train->add_option("--model-out", model_out, "model output path")->required();
  train->add_option("--seed", seed_flag, "seed for split and training");
  train->add_flag("--oversample", do_oversample, "oversample the training side");
  train->add_option("--class-weight", class_weight, "none or balanced")
      ->check(CLI::IsMember({"none", "balanced"}));
  train->add_option("--stopwords", common.stopwords_path, "replacement stopword list");

  auto* evaluate = app.add_subcommand("evaluate", "evaluate a saved model");
  std::string eval_model, eval_out;
  evaluate->add_option("--model", eval_model, "model file")->required();
  evaluate->add_option("--corpus", common.corpus_path, "corpus file")->required();
  evaluate->add_option("--format", common.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  evaluate->add_option("--out", eval_out, "metrics json path")->required();

  auto* predict_cmd = app.add_subcommand("predict", "classify new text");
  std::string predict_model, predict_text, predict_input;
  predict_cmd->add_option("--model", predict_model, "model file")->required();
  auto* text_opt = predict_cmd->add_option("--text", predict_text, "single text");
  auto* input_opt =
      predict_cmd->add_option("--input", predict_input, "file with one text per line");
  text_opt->excludes(input_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*ingest) return cmd_ingest(ingest_input, ingest_format, ingest_out);
    if (*eda) return cmd_eda(common, eda_out, top_n, skip_stemming);
    if (*train) {
      return cmd_train(common, config_path, model_out, seed_flag, do_oversample,
                       class_weight);
    }
    if (*evaluate) return cmd_evaluate(common, eval_model, eval_out);
    if (*predict_cmd) {
      if (predict_text.empty() && predict_input.empty()) {
        throw ConfigError("predict needs --text or --input");
      }
      return cmd_predict(predict_model, predict_text, predict_input);
    }
  } catch (const DegeneracyError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDegenerate;
  } catch (const InputError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return kExitOk;
}
