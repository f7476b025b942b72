#include "sentiscope/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

#include "json.hpp"
#include "sentiscope/csv.hpp"
#include "sentiscope/rng.hpp"

namespace sentiscope {

namespace {

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c += 'a' - 'A';
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

Sentiment parse_label(std::string_view raw, std::size_t line) {
  auto s = sentiment_from_string(raw);
  if (!s) {
    throw BadLabel("line " + std::to_string(line) + ": unknown sentiment \"" +
                   std::string(raw) + "\"");
  }
  return *s;
}

LabeledCorpus load_csv(std::istream& in) {
  auto records = read_csv(in);
  if (records.empty()) throw EmptyCorpus("csv file has no header row");

  const auto& header = records.front();
  int id_col = -1, text_col = -1, sentiment_col = -1, emotion_col = -1;
  for (std::size_t c = 0; c < header.fields.size(); ++c) {
    std::string name = lower_ascii(trim(header.fields[c]));
    if (name == "id") id_col = static_cast<int>(c);
    else if (name == "text") text_col = static_cast<int>(c);
    else if (name == "sentiment") sentiment_col = static_cast<int>(c);
    else if (name == "emotion") emotion_col = static_cast<int>(c);
  }
  if (text_col < 0) throw MissingColumn("csv header lacks required column \"text\"");
  if (sentiment_col < 0) throw MissingColumn("csv header lacks required column \"sentiment\"");

  std::vector<RawComment> docs;
  for (std::size_t r = 1; r < records.size(); ++r) {
    const auto& rec = records[r];
    auto field = [&](int col) -> std::string {
      if (col < 0 || static_cast<std::size_t>(col) >= rec.fields.size()) return {};
      return rec.fields[static_cast<std::size_t>(col)];
    };
    RawComment doc;
    doc.text = field(text_col);
    if (trim(doc.text).empty()) {
      throw EmptyText("line " + std::to_string(rec.line) + ": text is empty");
    }
    doc.sentiment = parse_label(trim(field(sentiment_col)), rec.line);
    doc.id = trim(field(id_col));
    if (doc.id.empty()) doc.id = "row-" + std::to_string(rec.line);
    std::string emotion = trim(field(emotion_col));
    if (!emotion.empty()) doc.emotion = emotion;
    docs.push_back(std::move(doc));
  }
  if (docs.empty()) throw EmptyCorpus("csv file has no data rows");
  return LabeledCorpus::from_documents(std::move(docs));
}

LabeledCorpus load_jsonl(std::istream& in) {
  std::vector<RawComment> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
    if (trim(line).empty()) continue;

    nlohmann::json obj;
    try {
      obj = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw InputError("line " + std::to_string(line_no) + ": invalid json: " + e.what());
    }
    if (!obj.is_object()) {
      throw InputError("line " + std::to_string(line_no) + ": expected a json object");
    }
    if (!obj.contains("text") || !obj["text"].is_string()) {
      throw MissingColumn("line " + std::to_string(line_no) + ": missing \"text\"");
    }
    if (!obj.contains("sentiment") || !obj["sentiment"].is_string()) {
      throw MissingColumn("line " + std::to_string(line_no) + ": missing \"sentiment\"");
    }

    RawComment doc;
    doc.text = obj["text"].get<std::string>();
    if (trim(doc.text).empty()) {
      throw EmptyText("line " + std::to_string(line_no) + ": text is empty");
    }
    doc.sentiment = parse_label(trim(obj["sentiment"].get<std::string>()), line_no);
    if (obj.contains("id") && obj["id"].is_string()) doc.id = obj["id"].get<std::string>();
    if (doc.id.empty()) doc.id = "row-" + std::to_string(line_no);
    if (obj.contains("emotion") && obj["emotion"].is_string()) {
      std::string emotion = trim(obj["emotion"].get<std::string>());
      if (!emotion.empty()) doc.emotion = emotion;
    }
    docs.push_back(std::move(doc));
  }
  if (docs.empty()) throw EmptyCorpus("jsonl file has no documents");
  return LabeledCorpus::from_documents(std::move(docs));
}

}  // namespace

const std::array<std::string, kNumSentiments>& sentiment_names() {
  static const std::array<std::string, kNumSentiments> names = {"negative", "neutral",
                                                                "positive"};
  return names;
}

std::string_view to_string(Sentiment s) {
  return sentiment_names()[static_cast<std::size_t>(s)];
}

std::optional<Sentiment> sentiment_from_string(std::string_view text) {
  std::string folded = lower_ascii(text);
  for (int i = 0; i < kNumSentiments; ++i) {
    if (folded == sentiment_names()[static_cast<std::size_t>(i)]) {
      return static_cast<Sentiment>(i);
    }
  }
  return std::nullopt;
}

LabeledCorpus LabeledCorpus::from_documents(std::vector<RawComment> docs) {
  LabeledCorpus corpus;
  std::unordered_set<std::string> seen;
  seen.reserve(docs.size());
  for (const auto& doc : docs) {
    if (doc.id.empty()) throw DuplicateId("document with empty id");
    if (!seen.insert(doc.id).second) {
      throw DuplicateId("duplicate document id \"" + doc.id + "\"");
    }
    if (trim(doc.text).empty()) {
      throw EmptyText("document \"" + doc.id + "\" has empty text");
    }
    corpus.label_counts[static_cast<std::size_t>(doc.sentiment)] += 1;
  }
  corpus.documents = std::move(docs);
  return corpus;
}

LabeledCorpus load_corpus(const std::filesystem::path& path, CorpusFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure("cannot open \"" + path.string() + "\" for reading");
  return format == CorpusFormat::csv ? load_csv(in) : load_jsonl(in);
}

std::map<Sentiment, LabelShare> label_distribution(const LabeledCorpus& corpus) {
  if (corpus.documents.empty()) throw EmptyCorpus("label distribution of an empty corpus");
  std::map<Sentiment, LabelShare> shares;
  const double total = static_cast<double>(corpus.size());
  for (int i = 0; i < kNumSentiments; ++i) {
    std::int64_t count = corpus.label_counts[static_cast<std::size_t>(i)];
    if (count == 0) continue;
    shares[static_cast<Sentiment>(i)] = {count, static_cast<double>(count) / total};
  }
  return shares;
}

void SplitSpec::validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ConfigError("test_fraction must lie strictly between 0 and 1");
  }
}

SplitResult split(const LabeledCorpus& corpus, const SplitSpec& spec) {
  spec.validate();
  if (corpus.documents.empty()) throw EmptyCorpus("cannot split an empty corpus");
  if (corpus.size() < 2) {
    throw DegenerateSplit("need at least 2 documents to split");
  }

  const auto n = corpus.documents.size();
  std::vector<char> in_test(n, 0);
  SplitMix64 rng(spec.seed);

  if (spec.stratified) {
    for (int c = 0; c < kNumSentiments; ++c) {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i) {
        if (corpus.documents[i].sentiment == static_cast<Sentiment>(c)) {
          members.push_back(i);
        }
      }
      if (members.size() < 2) continue;  // singleton classes stay in train
      shuffle(members, rng);
      auto want = static_cast<std::size_t>(std::max<long long>(
          1, std::llround(static_cast<double>(members.size()) * spec.test_fraction)));
      want = std::min(want, members.size());
      for (std::size_t k = 0; k < want; ++k) in_test[members[k]] = 1;
    }
  } else {
    std::vector<std::size_t> members(n);
    std::iota(members.begin(), members.end(), std::size_t{0});
    shuffle(members, rng);
    auto want = static_cast<std::size_t>(std::max<long long>(
        1, std::llround(static_cast<double>(n) * spec.test_fraction)));
    want = std::min(want, n);
    for (std::size_t k = 0; k < want; ++k) in_test[members[k]] = 1;
  }

  std::vector<RawComment> train_docs, test_docs;
  for (std::size_t i = 0; i < n; ++i) {
    (in_test[i] ? test_docs : train_docs).push_back(corpus.documents[i]);
  }
  if (train_docs.empty() || test_docs.empty()) {
    throw DegenerateSplit("split would leave train or test empty");
  }
  return {LabeledCorpus::from_documents(std::move(train_docs)),
          LabeledCorpus::from_documents(std::move(test_docs))};
}

LabeledCorpus oversample(const LabeledCorpus& corpus, std::uint64_t seed) {
  if (corpus.documents.empty()) throw EmptyCorpus("cannot oversample an empty corpus");
  const std::int64_t majority =
      *std::max_element(corpus.label_counts.begin(), corpus.label_counts.end());

  std::vector<RawComment> docs = corpus.documents;
  std::unordered_set<std::string> used_ids;
  for (const auto& doc : docs) used_ids.insert(doc.id);

  SplitMix64 rng(seed);
  for (int c = 0; c < kNumSentiments; ++c) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < corpus.documents.size(); ++i) {
      if (corpus.documents[i].sentiment == static_cast<Sentiment>(c)) members.push_back(i);
    }
    if (members.empty()) continue;
    std::map<std::string, int> dup_counter;
    for (std::int64_t need = majority - static_cast<std::int64_t>(members.size());
         need > 0; --need) {
      const auto& source = corpus.documents[members[rng.below(members.size())]];
      RawComment copy = source;
      std::string id;
      do {
        id = source.id + "-dup" + std::to_string(++dup_counter[source.id]);
      } while (used_ids.count(id) > 0);
      used_ids.insert(id);
      copy.id = std::move(id);
      docs.push_back(std::move(copy));
    }
  }
  return LabeledCorpus::from_documents(std::move(docs));
}

void write_jsonl(const LabeledCorpus& corpus, std::ostream& out) {
  for (const auto& doc : corpus.documents) {
    nlohmann::json obj;
    obj["id"] = doc.id;
    obj["text"] = doc.text;
    obj["sentiment"] = std::string(to_string(doc.sentiment));
    if (doc.emotion) obj["emotion"] = *doc.emotion;
    out << obj.dump() << '\n';
  }
}

}  // namespace sentiscope
