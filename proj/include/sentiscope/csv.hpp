#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace sentiscope {

struct CsvRecord {
  std::vector<std::string> fields;
  std::size_t line = 0;  // 1-based physical line where the record starts
};

// RFC 4180 reader: quoted fields may contain commas, doubled quotes and
// line breaks. Returns every record including the header. CRLF and a UTF-8
// BOM on the first line are tolerated.
std::vector<CsvRecord> read_csv(std::istream& in);

// Quotes a field if it contains a comma, a quote or a line break.
std::string csv_escape(std::string_view field);

}  // namespace sentiscope
