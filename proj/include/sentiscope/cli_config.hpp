#pragma once

#include <filesystem>
#include <set>
#include <string>

#include "sentiscope/corpus.hpp"
#include "sentiscope/errors.hpp"
#include "sentiscope/features.hpp"
#include "sentiscope/gbdt.hpp"
#include "sentiscope/preprocess.hpp"

namespace sentiscope {

// Everything the CLI reads from a config file, pre-validated.
struct CliConfig {
  SplitSpec split;
  PreprocessConfig preprocess;
  FeatureConfig features;
  TrainConfig train;
  // "section.key" names seen in the file; lets the CLI tell an explicit
  // value apart from a default when resolving flag/file/env precedence.
  std::set<std::string> keys_present;

  bool has(const std::string& key) const { return keys_present.count(key) > 0; }
};

// TOML-style file with flat sections [split], [preprocess], [features],
// [train]; values are strings, booleans, integers or reals. Unknown sections
// or keys raise ConfigError, as does any value violating a module invariant.
// In [features], max_features = 0 means "no cap". In [preprocess],
// stopwords_file / root_dict_file name word-list files to load.
CliConfig load_cli_config(const std::filesystem::path& path);

CliConfig default_cli_config();

}  // namespace sentiscope
