#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sentiscope/corpus.hpp"

namespace sentiscope::test {

inline RawComment doc(std::string id, std::string text, Sentiment s,
                      std::optional<std::string> emotion = std::nullopt) {
  RawComment c;
  c.id = std::move(id);
  c.text = std::move(text);
  c.sentiment = s;
  c.emotion = std::move(emotion);
  return c;
}

// n documents per entry, ids "<prefix><i>", all sharing the given text.
inline LabeledCorpus corpus_of(
    const std::vector<std::pair<std::string, Sentiment>>& texts) {
  std::vector<RawComment> docs;
  for (std::size_t i = 0; i < texts.size(); ++i) {
    docs.push_back(doc("d" + std::to_string(i + 1), texts[i].first, texts[i].second));
  }
  return LabeledCorpus::from_documents(std::move(docs));
}

}  // namespace sentiscope::test
