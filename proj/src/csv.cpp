#include "textclf/csv.hpp"

namespace textclf {

DelimitedReader::DelimitedReader(std::istream& in, char delimiter)
    : in_(in), delimiter_(delimiter) {}

char DelimitedReader::detect_delimiter(const std::string& first_line) {
  return first_line.find('\t') != std::string::npos ? '\t' : ',';
}

bool DelimitedReader::next(DelimitedRecord& out) {
  out.fields.clear();
  int c = in_.get();
  if (c == std::istream::traits_type::eof()) return false;
  out.record_number = ++records_read_;

  std::string field;
  bool in_quotes = false;
  bool saw_any = false;

  auto end_field = [&] {
    out.fields.push_back(std::move(field));
    field.clear();
  };

  while (true) {
    if (c == std::istream::traits_type::eof()) {
      if (in_quotes)
        throw ParseError("unterminated quoted field in record " +
                             std::to_string(out.record_number),
                         out.record_number);
      if (!field.empty() && field.back() == '\r') field.pop_back();
      end_field();
      return true;
    }
    const char ch = static_cast<char>(c);
    if (in_quotes) {
      if (ch == '"') {
        const int peek = in_.peek();
        if (peek == '"') {
          in_.get();
          field.push_back('"');
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
    } else if (ch == '"' && field.empty() && !saw_any) {
      in_quotes = true;
      saw_any = true;
    } else if (ch == delimiter_) {
      end_field();
      saw_any = false;
    } else if (ch == '\n') {
      if (!field.empty() && field.back() == '\r') field.pop_back();
      end_field();
      return true;
    } else {
      field.push_back(ch);
      saw_any = true;
    }
    c = in_.get();
  }
}

}  // namespace textclf
