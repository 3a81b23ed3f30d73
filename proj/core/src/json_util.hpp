#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sensorplace/error.hpp"

namespace sensorplace::detail {

/// Parses `text`, turning syntax errors into ParseError with line/column.
inline nlohmann::json parse_document(std::string_view text) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1;
    std::size_t column = 1;
    const std::size_t end = e.byte == 0 ? 0 : std::min<std::size_t>(e.byte - 1, text.size());
    for (std::size_t k = 0; k < end; ++k) {
      if (text[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("syntax error at line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + e.what(),
                     line, column);
  }
}

inline std::string field_path(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

inline const nlohmann::json& require(const nlohmann::json& obj, const std::string& key,
                                     const std::string& parent, nlohmann::json::value_t type) {
  const std::string field = field_path(parent, key);
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(field + ": missing", field);
  if (it->type() != type) throw ParseError(field + ": wrong type", field);
  return *it;
}

inline double number(const nlohmann::json& obj, const std::string& key,
                     const std::string& parent) {
  const std::string field = field_path(parent, key);
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(field + ": missing", field);
  if (!it->is_number()) throw ParseError(field + ": expected a number", field);
  return it->get<double>();
}

}  // namespace sensorplace::detail
