// SPDX-License-Identifier: Apache-2.0
#include "vida/config.hpp"

#include <fstream>

#include "vida/errors.hpp"

namespace vida {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  std::size_t e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

} // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open config file: " + path);
  }
  RunConfig cfg;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::size_t comment = line.find_first_of("#;");
    if (comment != std::string::npos) line.resize(comment);
    std::string text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '[') {
      if (text.back() != ']') {
        throw ParseError("line " + std::to_string(row) +
                             ": unterminated section header",
                         row);
      }
      continue; // sections are cosmetic
    }
    std::size_t eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(row) +
                           ": expected key = value, got '" + text + "'",
                       row);
    }
    std::string key = trim(text.substr(0, eq));
    std::string value = trim(text.substr(eq + 1));
    if (key.empty()) {
      throw ParseError("line " + std::to_string(row) + ": empty key", row);
    }
    if (key == "profiles") {
      if (value.empty()) {
        throw ParseError("line " + std::to_string(row) +
                             ": profiles needs a path",
                         row);
      }
      cfg.profile_paths.push_back(value);
      continue;
    }
    if (key == "out_dir") {
      cfg.out_dir = value;
      continue;
    }
    try {
      set_param_text(cfg.params, key, value);
    } catch (const ValidationError& e) {
      throw ParseError("line " + std::to_string(row) + ": " + e.what(), row);
    }
  }
  return cfg;
}

} // namespace vida
