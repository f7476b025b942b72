#include "sentiscope/cli_config.hpp"

#include <charconv>
#include <fstream>

namespace sentiscope {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (b < e && is_space(s[b])) ++b;
  while (e > b && is_space(s[e - 1])) --e;
  return std::string(s.substr(b, e - b));
}

struct Value {
  std::string raw;
  std::size_t line;

  bool as_bool() const {
    if (raw == "true") return true;
    if (raw == "false") return false;
    throw ConfigError("line " + std::to_string(line) + ": expected true or false, got \"" +
                      raw + "\"");
  }

  std::int64_t as_int() const {
    std::int64_t out = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
    if (ec != std::errc() || ptr != raw.data() + raw.size()) {
      throw ConfigError("line " + std::to_string(line) + ": expected an integer, got \"" +
                        raw + "\"");
    }
    return out;
  }

  std::uint64_t as_uint() const {
    std::uint64_t out = 0;
    auto [ptr, ec] = std::from_chars(raw.data(), raw.data() + raw.size(), out);
    if (ec != std::errc() || ptr != raw.data() + raw.size()) {
      throw ConfigError("line " + std::to_string(line) +
                        ": expected a non-negative integer, got \"" + raw + "\"");
    }
    return out;
  }

  double as_real() const {
    try {
      std::size_t used = 0;
      double out = std::stod(raw, &used);
      if (used != raw.size()) throw std::invalid_argument(raw);
      return out;
    } catch (const std::exception&) {
      throw ConfigError("line " + std::to_string(line) + ": expected a number, got \"" +
                        raw + "\"");
    }
  }

  std::string as_string() const {
    if (raw.size() >= 2 && raw.front() == '"' && raw.back() == '"') {
      return raw.substr(1, raw.size() - 2);
    }
    throw ConfigError("line " + std::to_string(line) + ": expected a quoted string, got \"" +
                      raw + "\"");
  }
};

}  // namespace

CliConfig default_cli_config() { return CliConfig{}; }

CliConfig load_cli_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open config file \"" + path.string() + "\"");

  CliConfig config;
  std::string section;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // Strip comments outside quotes.
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') quoted = !quoted;
      if (line[i] == '#' && !quoted) {
        line.erase(i);
        break;
      }
    }
    std::string stripped = trim(line);
    if (stripped.empty()) continue;

    if (stripped.front() == '[') {
      if (stripped.back() != ']') {
        throw ConfigError("line " + std::to_string(line_no) + ": malformed section header");
      }
      section = trim(stripped.substr(1, stripped.size() - 2));
      if (section != "split" && section != "preprocess" && section != "features" &&
          section != "train") {
        throw ConfigError("line " + std::to_string(line_no) + ": unknown section [" +
                          section + "]");
      }
      continue;
    }

    auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    std::string key = trim(stripped.substr(0, eq));
    Value value{trim(stripped.substr(eq + 1)), line_no};
    if (key.empty() || value.raw.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    if (section.empty()) {
      throw ConfigError("line " + std::to_string(line_no) + ": key \"" + key +
                        "\" outside any section");
    }

    bool known = true;
    if (section == "split") {
      if (key == "test_fraction") config.split.test_fraction = value.as_real();
      else if (key == "seed") config.split.seed = value.as_uint();
      else if (key == "stratified") config.split.stratified = value.as_bool();
      else known = false;
    } else if (section == "preprocess") {
      if (key == "lowercase") config.preprocess.lowercase = value.as_bool();
      else if (key == "strip_urls") config.preprocess.strip_urls = value.as_bool();
      else if (key == "strip_mentions") config.preprocess.strip_mentions = value.as_bool();
      else if (key == "min_token_len") config.preprocess.min_token_len = static_cast<int>(value.as_int());
      else if (key == "enable_stemming") config.preprocess.enable_stemming = value.as_bool();
      else if (key == "stopwords_file") config.preprocess.stopwords = load_wordlist(value.as_string());
      else if (key == "root_dict_file") config.preprocess.root_dictionary = load_wordlist(value.as_string());
      else known = false;
    } else if (section == "features") {
      if (key == "min_df") config.features.min_df = static_cast<int>(value.as_int());
      else if (key == "max_features") {
        auto cap = value.as_int();
        if (cap == 0) config.features.max_features.reset();  // 0 lifts the cap
        else config.features.max_features = static_cast<int>(cap);
      }
      else if (key == "sublinear_tf") config.features.sublinear_tf = value.as_bool();
      else known = false;
    } else if (section == "train") {
      if (key == "n_rounds") config.train.n_rounds = static_cast<int>(value.as_int());
      else if (key == "learning_rate") config.train.learning_rate = value.as_real();
      else if (key == "max_depth") config.train.max_depth = static_cast<int>(value.as_int());
      else if (key == "lambda") config.train.lambda = value.as_real();
      else if (key == "gamma") config.train.gamma = value.as_real();
      else if (key == "min_child_weight") config.train.min_child_weight = value.as_real();
      else if (key == "seed") config.train.seed = value.as_uint();
      else if (key == "class_weighting") {
        std::string mode = value.as_string();
        if (mode == "balanced") {
          config.train.class_weighting = TrainConfig::ClassWeighting::balanced;
        } else if (mode == "none") {
          config.train.class_weighting = TrainConfig::ClassWeighting::none;
        } else {
          throw ConfigError("line " + std::to_string(line_no) +
                            ": class_weighting must be \"none\" or \"balanced\"");
        }
      }
      else known = false;
    }
    if (!known) {
      throw ConfigError("line " + std::to_string(line_no) + ": unknown key \"" + key +
                        "\" in section [" + section + "]");
    }
    config.keys_present.insert(section + "." + key);
  }

  config.split.validate();
  config.preprocess.validate();
  config.features.validate();
  config.train.validate();
  return config;
}

}  // namespace sentiscope
