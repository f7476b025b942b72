#include "sentiscope/csv.hpp"

namespace sentiscope {

std::vector<CsvRecord> read_csv(std::istream& in) {
  std::vector<CsvRecord> records;
  std::string data(std::istreambuf_iterator<char>(in), {});
  if (data.starts_with("\xEF\xBB\xBF")) data.erase(0, 3);

  std::size_t line = 1;
  std::size_t i = 0;
  const std::size_t n = data.size();
  while (i < n) {
    CsvRecord rec;
    rec.line = line;
    std::string field;
    bool quoted = false;
    bool record_done = false;
    while (!record_done) {
      if (quoted) {
        if (i >= n) {  // unterminated quote: take what we have
          rec.fields.push_back(std::move(field));
          record_done = true;
          break;
        }
        char c = data[i++];
        if (c == '"') {
          if (i < n && data[i] == '"') {
            field += '"';
            ++i;
          } else {
            quoted = false;
          }
        } else {
          if (c == '\n') ++line;
          field += c;
        }
        continue;
      }
      if (i >= n) {
        rec.fields.push_back(std::move(field));
        record_done = true;
        break;
      }
      char c = data[i++];
      switch (c) {
        case '"':
          quoted = true;
          break;
        case ',':
          rec.fields.push_back(std::move(field));
          field.clear();
          break;
        case '\r':
          if (i < n && data[i] == '\n') ++i;
          [[fallthrough]];
        case '\n':
          ++line;
          rec.fields.push_back(std::move(field));
          record_done = true;
          break;
        default:
          field += c;
      }
    }
    // A lone trailing newline produces one empty field; skip such records.
    if (rec.fields.size() == 1 && rec.fields[0].empty()) continue;
    records.push_back(std::move(rec));
  }
  return records;
}

std::string csv_escape(std::string_view field) {
  bool needs_quotes = field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace sentiscope
