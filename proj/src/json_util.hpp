#pragma once

#include <json.hpp>
#include <string>

#include "gridsumm/errors.hpp"

namespace gridsumm::detail {

using Json = nlohmann::ordered_json;

inline int line_of_offset(const std::string& text, std::size_t offset) {
  int line = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t offset = e.byte > 0 ? e.byte - 1 : 0;
    throw ParseError(e.what(), line_of_offset(text, offset));
  }
}

// For line-oriented formats: the caller supplies its own line number.
inline Json parse_json_line(const std::string& line, int lineno) {
  try {
    return Json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.what(), lineno);
  }
}

}  // namespace gridsumm::detail
