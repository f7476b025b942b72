#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sentiscope/csv.hpp"

using namespace sentiscope;

namespace {
std::vector<CsvRecord> parse(const std::string& text) {
  std::istringstream in(text);
  return read_csv(in);
}
}  // namespace

TEST_CASE("plain rows split on commas") {
  auto rows = parse("a,b,c\n1,2,3\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].fields == std::vector<std::string>{"a", "b", "c"});
  CHECK(rows[1].fields == std::vector<std::string>{"1", "2", "3"});
  CHECK(rows[0].line == 1);
  CHECK(rows[1].line == 2);
}

TEST_CASE("quoted fields keep commas and doubled quotes") {
  auto rows = parse("\"a,b\",\"say \"\"hi\"\"\"\n");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].fields == std::vector<std::string>{"a,b", "say \"hi\""});
}

TEST_CASE("quoted fields may span lines and line numbers track the start") {
  auto rows = parse("id,text\n1,\"first\nsecond\"\n2,after\n");
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].fields[1] == "first\nsecond");
  CHECK(rows[1].line == 2);
  CHECK(rows[2].line == 4);  // the embedded newline consumed a physical line
}

TEST_CASE("CRLF endings and a UTF-8 BOM are tolerated") {
  auto rows = parse("\xEF\xBB\xBFx,y\r\n1,2\r\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].fields == std::vector<std::string>{"x", "y"});
  CHECK(rows[1].fields == std::vector<std::string>{"1", "2"});
}

TEST_CASE("blank records are skipped, empty fields are kept") {
  auto rows = parse("a,b\n\n\n1,\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].fields == std::vector<std::string>{"1", ""});
  CHECK(rows[1].line == 4);
}

TEST_CASE("missing trailing newline still yields the last record") {
  auto rows = parse("a,b\n1,2");
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].fields == std::vector<std::string>{"1", "2"});
}

TEST_CASE("csv_escape quotes only when needed") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("two\nlines") == "\"two\nlines\"");
}

TEST_CASE("escape then parse is the identity") {
  std::vector<std::string> fields{"a,b", "\"q\"", "nl\n", "plain", ""};
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_escape(fields[i]);
  }
  auto rows = parse(line + "\n");
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].fields == fields);
}
