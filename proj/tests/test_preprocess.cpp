#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "sentiscope/preprocess.hpp"
#include "sentiscope/rng.hpp"

using namespace sentiscope;

namespace {
PreprocessConfig no_stopwords() {
  PreprocessConfig config;
  config.stopwords.clear();
  return config;
}
}  // namespace

TEST_CASE("case_fold lowercases ASCII and is idempotent") {
  CHECK(case_fold("MANTAP Banget") == "mantap banget");
  CHECK(case_fold("sudah kecil") == "sudah kecil");
  CHECK(case_fold("Antek ASING") == "antek asing");
  CHECK(case_fold(case_fold("MiXeD 123 !!")) == case_fold("MiXeD 123 !!"));
  CHECK(case_fold("") == "");
}

TEST_CASE("cleanse strips urls, mentions, digits, punctuation and emoji") {
  PreprocessConfig config;
  CHECK(cleanse("mantap banget!!! 👍 cek https://promo.id", config) ==
        "mantap banget cek");
  CHECK(cleanse("", config) == "");
  CHECK(cleanse("@admin tolong respon dong 123", config) == "tolong respon dong");
  CHECK(cleanse("cek www.toko.id dan http://a.b", config) == "cek dan");
}

TEST_CASE("cleanse toggles keep urls or mentions when disabled") {
  PreprocessConfig config;
  config.strip_urls = false;
  config.strip_mentions = false;
  CHECK(cleanse("@admin cek www.toko.id", config) == "admin cek www toko id");
}

TEST_CASE("cleanse is idempotent") {
  PreprocessConfig config;
  for (const char* text :
       {"mantap banget!!! 👍 cek https://promo.id", "a@b c", "x  y\tz",
        "@m", "www.a 🤔 Zz"}) {
    std::string once = cleanse(text, config);
    CHECK(cleanse(once, config) == once);
  }
}

TEST_CASE("tokenize splits on whitespace and drops short tokens") {
  PreprocessConfig config;
  CHECK(tokenize("antek asing", config) == TokenList{"antek", "asing"});
  CHECK(tokenize("a di rumah", config) == TokenList{"di", "rumah"});
  CHECK(tokenize("", config) == TokenList{});

  config.min_token_len = 1;
  CHECK(tokenize("a di rumah", config) == TokenList{"a", "di", "rumah"});
}

TEST_CASE("remove_stopwords filters by the configured set") {
  PreprocessConfig config = no_stopwords();
  config.stopwords = {"yang"};
  CHECK(remove_stopwords({"barang", "yang", "bagus"}, config) ==
        TokenList{"barang", "bagus"});
  CHECK(remove_stopwords({}, config) == TokenList{});
  CHECK(remove_stopwords({"barang", "bagus"}, config) ==
        TokenList{"barang", "bagus"});
}

TEST_CASE("stem_token strips suffixes stage by stage") {
  CHECK(stem_token("makanan") == "makan");    // -an
  CHECK(stem_token("bukulah") == "buku");     // -lah
  CHECK(stem_token("bukumu") == "buku");      // -mu
  CHECK(stem_token("paketnya") == "paket");   // -nya
  CHECK(stem_token("ambilkan") == "ambil");   // -kan
  CHECK(stem_token("apapun") == "apa");       // -pun
  CHECK(stem_token("mantap") == "mantap");    // nothing matches
}

TEST_CASE("stem_token suffix strips require a 3-letter remainder") {
  CHECK(stem_token("akan") == "akan");  // -kan would leave "a", -an "ak"
  CHECK(stem_token("ini") == "ini");    // -i would leave "in"
  CHECK(stem_token("dia") == "dia");
}

TEST_CASE("stem_token strips prefixes with a 4-letter remainder guard") {
  CHECK(stem_token("dibeli") == "beli");
  CHECK(stem_token("terlambat") == "lambat");
  CHECK(stem_token("membayar") == "bayar");
  CHECK(stem_token("bermain") == "main");
  CHECK(stem_token("terima") == "terima");  // "ima" has only 3 letters
  CHECK(stem_token("berat") == "berat");    // "at" has only 2 letters
}

TEST_CASE("stem_token demands a 5-letter remainder for ke-") {
  CHECK(stem_token("kecewa") == "kecewa");    // "cewa" too short for ke-
  CHECK(stem_token("kekasih") == "kasih");    // 5 letters, strips
  CHECK(stem_token("kecewanya") == "kecewa"); // -nya, then ke- still blocked
}

TEST_CASE("stem_token recodes meny-/peny- to s") {
  CHECK(stem_token("menyapu") == "sapu");
  CHECK(stem_token("penyakit") == "sakit");
}

TEST_CASE("stem_token strips at most two prefixes") {
  // member- = mem + ber; both strip, remainder guard allows each step.
  CHECK(stem_token("memberlakukan") == "laku");
  // Only the outermost two layers ever come off.
  CHECK(stem_token("dipertanyakan") == "tanya");
}

TEST_CASE("stem_token combines suffix and prefix stages") {
  CHECK(stem_token("dibelinya") == "beli");    // -nya then di-
  CHECK(stem_token("makananpun") == "makan");  // -pun then -an
  CHECK(stem_token("kirimannya") == "kirim");  // -nya then -an
}

TEST_CASE("each suffix stage fires once, first matching suffix wins") {
  // Stage 3 tries -kan before -an, so "masakan" loses its full -kan.
  CHECK(stem_token("masakanku") == "masa");
  // Only one stage-2 possessive comes off even when the result ends like one.
  CHECK(stem_token("bukumu") == "buku");
}

TEST_CASE("forbidden prefix and suffix pairs protect the suffix") {
  // di- owns a trailing -i (passive verbs); the prefix stage then exposes
  // the root instead of stage 3 leaving a mangled "dibel".
  CHECK(stem_token("dibeli") == "beli");
  CHECK(stem_token("ditanami") == "tanami");  // -i kept, di- stripped
  CHECK(stem_token("ketahui") == "tahui");    // ke- never pairs with -i
}

TEST_CASE("a root dictionary gates every strip") {
  // Each individual strip must land on a listed word, so reaching "beli"
  // requires the intermediate form "dibeli" to be listed as well.
  std::set<std::string> chain{"dibeli", "beli"};
  CHECK(stem_token("dibelinya", &chain) == "beli");

  // With only the final root listed, the very first strip ("dibelinya" ->
  // "dibeli") is rejected and the token survives untouched.
  std::set<std::string> final_only{"beli"};
  CHECK(stem_token("dibelinya", &final_only) == "dibelinya");

  // "makan" is not listed, so nothing may be stripped from "makanan"...
  std::set<std::string> roots{"beli"};
  CHECK(stem_token("makanan", &roots) == "makanan");
  // ...and listing it unlocks exactly that strip.
  std::set<std::string> makan{"makan"};
  CHECK(stem_token("makanan", &makan) == "makan");
}

TEST_CASE("stem_token never lengthens and never empties a 3+ letter token") {
  SplitMix64 rng(31337);
  for (int i = 0; i < 5000; ++i) {
    std::string token;
    std::size_t len = 3 + rng.below(12);
    for (std::size_t j = 0; j < len; ++j) {
      token += static_cast<char>('a' + rng.below(26));
    }
    std::string stem = stem_token(token);
    CHECK(stem.size() <= token.size());
    CHECK(stem.size() >= 3);
  }
}

TEST_CASE("preprocess_document runs the full chain") {
  PreprocessConfig config = no_stopwords();
  CHECK(preprocess_document("Paketnya TELAT!!! kecewa berat 😡", config) ==
        TokenList{"paket", "telat", "kecewa", "berat"});
  CHECK(preprocess_document("", config) == TokenList{});

  PreprocessConfig with_min = no_stopwords();
  with_min.stopwords = {"min"};
  CHECK(preprocess_document("Terima kasih min", with_min) ==
        TokenList{"terima", "kasih"});
}

TEST_CASE("preprocess_document with the defaults removes stopwords") {
  PreprocessConfig config;  // bundled stopword list
  auto tokens = preprocess_document("barang yang bagus dan murah", config);
  CHECK(tokens == TokenList{"barang", "bagus", "murah"});
}

TEST_CASE("preprocess_document without stemming only folds and filters") {
  PreprocessConfig config = no_stopwords();
  config.enable_stemming = false;
  CHECK(preprocess_document("Paketnya TELAT!!!", config) ==
        TokenList{"paketnya", "telat"});
}

TEST_CASE("stems shorter than min_token_len are dropped after stemming") {
  PreprocessConfig config = no_stopwords();
  config.min_token_len = 5;
  // "dibelinya" stems to "beli" (4 letters) and must vanish at min 5, while
  // "mantap" matches no affix rule and survives unchanged.
  CHECK(preprocess_document("dibelinya mantap", config) == TokenList{"mantap"});
}

TEST_CASE("the bundled stopword file matches the compiled-in list") {
  auto from_file = load_wordlist(std::filesystem::path(SENTISCOPE_DATA_DIR) /
                                 "stopwords_id.txt");
  CHECK(from_file == default_stopwords());
  CHECK(from_file.size() == 123);
}

TEST_CASE("load_wordlist folds case and skips comments and blanks") {
  auto path = std::filesystem::temp_directory_path() / "sentiscope-wordlist.txt";
  {
    std::ofstream out(path, std::ios::binary);
    out << "# comment\n\n  Yang  \nDAN # trailing comment\r\n";
  }
  auto words = load_wordlist(path);
  std::filesystem::remove(path);
  CHECK(words == std::set<std::string>{"yang", "dan"});

  CHECK_THROWS_AS(load_wordlist("/nonexistent/words.txt"), IoFailure);
}

TEST_CASE("config validation rejects malformed word lists") {
  PreprocessConfig config;
  config.min_token_len = 0;
  CHECK_THROWS_AS(config.validate(), ConfigError);

  PreprocessConfig bad_stop;
  bad_stop.stopwords = {"Yang"};
  CHECK_THROWS_AS(bad_stop.validate(), ConfigError);

  PreprocessConfig bad_dict;
  bad_dict.root_dictionary = std::set<std::string>{"be li"};
  CHECK_THROWS_AS(bad_dict.validate(), ConfigError);

  PreprocessConfig ok;
  CHECK_NOTHROW(ok.validate());
}

TEST_CASE("pipeline output only ever contains lowercase 2+ letter tokens") {
  PreprocessConfig config;
  SplitMix64 rng(99);
  const std::vector<std::string> pieces{
      "Halo", "DUNIA", "123", "!!!", "😡", "@user", "https://x.id", "kata-kata",
      "中文", "ÀÉÎ", "a", "zz", "Paketnya", "\t", "\n", "¡¿", "www.spam.id"};
  for (int i = 0; i < 2000; ++i) {
    std::string text;
    std::size_t parts = rng.below(8);
    for (std::size_t j = 0; j < parts; ++j) {
      text += pieces[rng.below(pieces.size())];
      text += (rng.below(2) ? " " : "");
    }
    for (const auto& token : preprocess_document(text, config)) {
      REQUIRE(token.size() >= 2);
      for (char c : token) REQUIRE((c >= 'a' && c <= 'z'));
    }
  }
}
