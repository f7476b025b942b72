#include "sentiscope/preprocess.hpp"

namespace sentiscope {

namespace {

// Mirrors data/stopwords_id.txt; a unit test keeps the two in sync.
constexpr const char* kStopwords[] = {
    "ada",      "adalah",    "agar",     "akan",     "aku",      "anda",
    "antara",   "apa",       "apakah",   "atas",     "atau",     "bagaimana",
    "bagi",     "bahkan",    "bahwa",    "banyak",   "bawah",    "beberapa",
    "begini",   "begitu",    "belum",    "berapa",   "bisa",     "bukan",
    "dalam",    "dan",       "dapat",    "dari",     "dengan",   "dia",
    "di",       "dong",      "gak",      "hanya",    "harus",    "hingga",
    "ia",       "ialah",     "ini",      "itu",      "iya",      "jadi",
    "jangan",   "jika",      "juga",     "kalau",    "kami",     "kamu",
    "kan",      "kapan",     "karena",   "ke",       "kemudian", "kenapa",
    "kepada",   "ketika",    "kita",     "kok",      "lagi",     "lah",
    "lain",     "lalu",      "lebih",    "maka",     "mana",     "masih",
    "mau",      "memang",    "mengapa",  "mereka",   "meski",    "meskipun",
    "mungkin",  "namun",     "nanti",    "nya",      "oleh",     "pada",
    "para",     "pernah",    "pula",     "pun",      "saat",     "saja",
    "sama",     "sampai",    "saya",     "sebab",    "sebagai",  "sebelum",
    "sedang",   "sedangkan", "sejak",    "sekarang", "semua",    "seperti",
    "serta",    "sesudah",   "setelah",  "setiap",   "siapa",    "sih",
    "sini",     "sudah",     "supaya",   "tak",      "tanpa",    "tapi",
    "telah",    "tentang",   "tentu",    "terhadap", "tersebut", "tetapi",
    "tiap",     "tidak",     "untuk",    "walau",    "walaupun", "ya",
    "yaitu",    "yakni",     "yang",
};

}  // namespace

const std::set<std::string>& default_stopwords() {
  static const std::set<std::string> words(std::begin(kStopwords), std::end(kStopwords));
  return words;
}

}  // namespace sentiscope
