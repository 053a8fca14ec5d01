#pragma once

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace cotube::toml {

/// Minimal TOML subset: [table] headers, key = value with strings, integers,
/// floats, booleans, and flat arrays of these; # comments. Enough for the
/// problem-spec files; parse errors carry line numbers.
struct Value {
  std::variant<std::string, double, std::int64_t, bool, std::vector<Value>> data;

  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_number() const {
    return std::holds_alternative<double>(data) || std::holds_alternative<std::int64_t>(data);
  }
  bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_array() const { return std::holds_alternative<std::vector<Value>>(data); }

  const std::string& as_string() const { return std::get<std::string>(data); }
  double as_number() const {
    return is_int() ? static_cast<double>(std::get<std::int64_t>(data)) : std::get<double>(data);
  }
  std::int64_t as_int() const { return std::get<std::int64_t>(data); }
  bool as_bool() const { return std::get<bool>(data); }
  const std::vector<Value>& as_array() const { return std::get<std::vector<Value>>(data); }
};

/// table name -> (key -> value); top-level keys live under "".
using Document = std::map<std::string, std::map<std::string, Value>>;

/// Throws std::runtime_error with a line-numbered message on malformed input.
Document parse(const std::string& text);
Document parse_file(const std::string& path);

}  // namespace cotube::toml
