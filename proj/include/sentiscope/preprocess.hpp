#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "sentiscope/errors.hpp"

namespace sentiscope {

using TokenList = std::vector<std::string>;

// Bundled Indonesian function-word list (also shipped as data/stopwords_id.txt).
const std::set<std::string>& default_stopwords();

// One word per line, '#' starts a comment, blank lines ignored. Words are
// case-folded on load.
std::set<std::string> load_wordlist(const std::filesystem::path& path);

struct PreprocessConfig {
  bool lowercase = true;
  bool strip_urls = true;
  bool strip_mentions = true;
  int min_token_len = 2;
  std::set<std::string> stopwords = default_stopwords();
  bool enable_stemming = true;
  // When set, an affix strip is accepted only if the stripped form is listed.
  std::optional<std::set<std::string>> root_dictionary;

  void validate() const;  // throws ConfigError
};

// ASCII case fold (A-Z -> a-z). Idempotent. Everything outside a-z is
// dropped by cleanse() right after, so non-ASCII case pairs never reach the
// token stream either way.
std::string case_fold(std::string_view text);

// Drops URL-ish tokens (http://, https://, www.) and @mentions, replaces
// every character outside a-z with a space, collapses whitespace runs and
// trims. Idempotent.
std::string cleanse(std::string_view text, const PreprocessConfig& config);

// Whitespace split; tokens shorter than min_token_len are dropped.
TokenList tokenize(std::string_view cleansed, const PreprocessConfig& config);

TokenList remove_stopwords(TokenList tokens, const PreprocessConfig& config);

// Dictionary-free Indonesian affix stripping. Fixed stage order, each stage
// fires at most once: inflectional particles (-lah/-kah/-pun), possessives
// (-ku/-mu/-nya), derivational suffixes (-kan/-an/-i), then up to two
// derivational prefixes (di-/ke-/se-/ber-/ter-/pe-/per-/me-/mem-/men-/meng-/
// meny-, longest match first; meny-/peny- recode to "s" + remainder). A
// suffix strip must leave >= 3 letters, a prefix strip >= 4 (ke- demands
// >= 5: short remainders after ke- are nearly always overstemmed roots,
// e.g. "kecewa").
std::string stem_token(std::string_view token);
std::string stem_token(std::string_view token,
                       const std::set<std::string>* root_dictionary);

// case_fold -> cleanse -> tokenize -> remove_stopwords -> stem per token.
TokenList preprocess_document(std::string_view text, const PreprocessConfig& config);

}  // namespace sentiscope
