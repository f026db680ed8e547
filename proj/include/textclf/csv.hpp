#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace textclf {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t record)
      : std::runtime_error(message), record_(record) {}
  std::size_t record() const { return record_; }

 private:
  std::size_t record_;
};

// One record of a delimited file. record_number is 1-based and counts
// records, not physical lines (quoted fields may span lines).
struct DelimitedRecord {
  std::vector<std::string> fields;
  std::size_t record_number = 0;
};

// Streaming reader for comma- or tab-separated text. Fields may be quoted
// with '"'; quoted fields may contain the delimiter, doubled quotes, and
// newlines. Accepts LF and CRLF line endings.
class DelimitedReader {
 public:
  DelimitedReader(std::istream& in, char delimiter);

  // Reads the next record into `out`. Returns false at end of input.
  // Throws ParseError on an unterminated quoted field.
  bool next(DelimitedRecord& out);

  // Heuristic: tab wins if the line contains any tab, else comma.
  static char detect_delimiter(const std::string& first_line);

 private:
  std::istream& in_;
  char delimiter_;
  std::size_t records_read_ = 0;
};

}  // namespace textclf
