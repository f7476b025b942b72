#include "sentiscope/preprocess.hpp"

#include <array>
#include <fstream>

namespace sentiscope {

namespace {

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

bool is_lower_letter(char c) { return c >= 'a' && c <= 'z'; }

bool all_lower_letters(std::string_view word) {
  if (word.empty()) return false;
  for (char c : word) {
    if (!is_lower_letter(c)) return false;
  }
  return true;
}

struct Prefix {
  std::string_view text;
  bool recode_s;      // meny-/peny- keep the elided root consonant: "s" + remainder
  int min_remainder;  // smallest stripped result this prefix may leave behind
};

// Longest match first; within a length the prefixes are mutually exclusive.
// Every prefix demands a 4-letter remainder (protects short roots such as
// "terima" and "berat").  "ke" alone demands 5: genuine bare ke- derivatives
// (kekasih, kehendak) have long roots, while 4-letter remainders after ke-
// are almost always overstemmed roots ("kecewa" is not ke + cewa).
constexpr std::array<Prefix, 13> kPrefixes = {{
    {"meny", true, 4},
    {"peny", true, 4},
    {"meng", false, 4},
    {"mem", false, 4},
    {"men", false, 4},
    {"ber", false, 4},
    {"ter", false, 4},
    {"per", false, 4},
    {"di", false, 4},
    {"ke", false, 5},
    {"se", false, 4},
    {"pe", false, 4},
    {"me", false, 4},
}};

std::string_view leading_prefix(std::string_view word) {
  for (const auto& p : kPrefixes) {
    if (word.starts_with(p.text)) return p.text;
  }
  return {};
}

// Affix pairs that never combine, so the suffix is left alone when the word
// still starts with the prefix. Classic confix-stripping table plus di-/-i:
// passive di- verbs ending in -i almost always own that -i ("dibeli").
bool combination_forbidden(std::string_view prefix, std::string_view suffix) {
  if (prefix.empty()) return false;
  if (prefix == "ber") return suffix == "i";
  if (prefix == "di") return suffix == "an" || suffix == "i";
  if (prefix == "ke") return suffix == "i" || suffix == "kan";
  if (prefix == "se") return suffix == "i" || suffix == "kan";
  if (prefix == "me" || prefix == "mem" || prefix == "men" || prefix == "meng" ||
      prefix == "meny") {
    return suffix == "an";
  }
  return false;
}

bool accepted(const std::string& candidate, const std::set<std::string>* dict) {
  return dict == nullptr || dict->count(candidate) > 0;
}

// One suffix stage: strip the first listed suffix that matches and leaves at
// least 3 letters (and passes the dictionary gate when one is supplied).
void strip_suffix_stage(std::string& word, std::initializer_list<std::string_view> suffixes,
                        bool check_combinations, const std::set<std::string>* dict) {
  std::string_view prefix = check_combinations ? leading_prefix(word) : std::string_view{};
  for (std::string_view suffix : suffixes) {
    if (word.size() < suffix.size() + 3) continue;
    if (!std::string_view(word).ends_with(suffix)) continue;
    if (check_combinations && combination_forbidden(prefix, suffix)) continue;
    std::string candidate = word.substr(0, word.size() - suffix.size());
    if (!accepted(candidate, dict)) continue;
    word = std::move(candidate);
    return;
  }
}

}  // namespace

std::set<std::string> load_wordlist(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open word list \"" + path.string() + "\"");
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::size_t b = 0, e = line.size();
    while (b < e && is_space(line[b])) ++b;
    while (e > b && is_space(line[e - 1])) --e;
    if (b == e) continue;
    words.insert(case_fold(std::string_view(line).substr(b, e - b)));
  }
  return words;
}

void PreprocessConfig::validate() const {
  if (min_token_len < 1) throw ConfigError("min_token_len must be >= 1");
  for (const auto& word : stopwords) {
    if (!all_lower_letters(word)) {
      throw ConfigError("stopword \"" + word + "\" must be lowercase letters only");
    }
  }
  if (root_dictionary) {
    for (const auto& word : *root_dictionary) {
      if (!all_lower_letters(word)) {
        throw ConfigError("root dictionary entry \"" + word +
                          "\" must be lowercase letters only");
      }
    }
  }
}

std::string case_fold(std::string_view text) {
  std::string out(text);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
  }
  return out;
}

std::string cleanse(std::string_view text, const PreprocessConfig& config) {
  // Token pass: drop URL-ish tokens and @mentions whole.
  std::string kept;
  kept.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    if (is_space(text[i])) {
      kept += ' ';
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && !is_space(text[j])) ++j;
    std::string_view token = text.substr(i, j - i);
    bool drop = false;
    if (config.strip_urls &&
        (token.starts_with("http://") || token.starts_with("https://") ||
         token.starts_with("www."))) {
      drop = true;
    }
    if (config.strip_mentions && token.starts_with("@")) drop = true;
    if (!drop) kept.append(token);
    kept += ' ';
    i = j;
  }

  // Character pass: anything outside a-z becomes a space, runs collapse.
  std::string out;
  out.reserve(kept.size());
  bool pending_space = false;
  for (char c : kept) {
    if (is_lower_letter(c)) {
      if (pending_space && !out.empty()) out += ' ';
      pending_space = false;
      out += c;
    } else {
      pending_space = true;
    }
  }
  return out;
}

TokenList tokenize(std::string_view cleansed, const PreprocessConfig& config) {
  TokenList tokens;
  std::size_t i = 0;
  while (i < cleansed.size()) {
    if (is_space(cleansed[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cleansed.size() && !is_space(cleansed[j])) ++j;
    if (j - i >= static_cast<std::size_t>(config.min_token_len)) {
      tokens.emplace_back(cleansed.substr(i, j - i));
    }
    i = j;
  }
  return tokens;
}

TokenList remove_stopwords(TokenList tokens, const PreprocessConfig& config) {
  TokenList kept;
  kept.reserve(tokens.size());
  for (auto& token : tokens) {
    if (config.stopwords.count(token) == 0) kept.push_back(std::move(token));
  }
  return kept;
}

std::string stem_token(std::string_view token) { return stem_token(token, nullptr); }

std::string stem_token(std::string_view token,
                       const std::set<std::string>* root_dictionary) {
  std::string word(token);

  strip_suffix_stage(word, {"lah", "kah", "pun"}, false, root_dictionary);
  strip_suffix_stage(word, {"ku", "mu", "nya"}, false, root_dictionary);
  strip_suffix_stage(word, {"kan", "an", "i"}, true, root_dictionary);

  for (int strips = 0; strips < 2; ++strips) {
    const Prefix* match = nullptr;
    for (const auto& p : kPrefixes) {
      if (word.size() > p.text.size() && std::string_view(word).starts_with(p.text)) {
        match = &p;
        break;
      }
    }
    if (match == nullptr) break;
    std::string candidate = word.substr(match->text.size());
    if (match->recode_s) candidate.insert(candidate.begin(), 's');
    if (candidate.size() < static_cast<std::size_t>(match->min_remainder)) break;
    if (!accepted(candidate, root_dictionary)) break;
    word = std::move(candidate);
  }
  return word;
}

TokenList preprocess_document(std::string_view text, const PreprocessConfig& config) {
  std::string folded = config.lowercase ? case_fold(text) : std::string(text);
  std::string cleaned = cleanse(folded, config);
  TokenList tokens = remove_stopwords(tokenize(cleaned, config), config);
  if (!config.enable_stemming) return tokens;

  const std::set<std::string>* dict =
      config.root_dictionary ? &*config.root_dictionary : nullptr;
  TokenList stemmed;
  stemmed.reserve(tokens.size());
  for (const auto& token : tokens) {
    std::string stem = stem_token(token, dict);
    if (stem.size() >= static_cast<std::size_t>(config.min_token_len)) {
      stemmed.push_back(std::move(stem));
    }
  }
  return stemmed;
}

}  // namespace sentiscope
