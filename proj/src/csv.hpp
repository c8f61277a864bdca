// SPDX-License-Identifier: Apache-2.0
// Internal CSV helpers shared by the population loader and the report
// writers. Quoting follows RFC 4180 except that records never span lines.
#ifndef VIDA_SRC_CSV_HPP
#define VIDA_SRC_CSV_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "vida/errors.hpp"

namespace vida::csv {

// Split one record into fields, honoring double-quote quoting. `row` is
// the 1-based line number used in error messages.
inline std::vector<std::string> split_record(const std::string& line,
                                             std::size_t row = 1) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      if (!cur.empty()) {
        throw ParseError("row " + std::to_string(row) +
                             ": quote inside unquoted field",
                         row, i + 1);
      }
      quoted = true;
    } else if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
    ++i;
  }
  if (quoted) {
    throw ParseError("row " + std::to_string(row) + ": unterminated quote",
                     row, line.size());
  }
  fields.push_back(cur);
  return fields;
}

// Quote a field if it contains a comma, quote or newline.
inline std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

} // namespace vida::csv

#endif
