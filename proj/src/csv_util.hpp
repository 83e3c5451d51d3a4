#pragma once

// Internal CSV helpers shared by the result writers/readers.

#include <cstdio>
#include <string>
#include <vector>

#include "fracred/errors.hpp"

namespace fracred::detail {

inline std::string g17(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(field);
      field.clear();
    } else if (ch != '\r') {
      field += ch;
    }
  }
  fields.push_back(field);
  return fields;
}

inline double parse_double(const std::string& text, std::size_t line_no) {
  try {
    std::size_t pos = 0;
    const double value = std::stod(text, &pos);
    while (pos < text.size() &&
           (text[pos] == ' ' || text[pos] == '\t')) {
      ++pos;
    }
    if (pos != text.size()) {
      raise(ErrorCode::parse, "trailing characters in numeric field '" + text +
                                  "' on line " + std::to_string(line_no));
    }
    return value;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    raise(ErrorCode::parse, "bad numeric field '" + text + "' on line " +
                                std::to_string(line_no));
  }
}

}  // namespace fracred::detail
