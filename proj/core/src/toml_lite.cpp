#include "cotube/toml_lite.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cotube::toml {

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw std::runtime_error("toml parse error at line " + std::to_string(line) + ": " + what);
}

std::string strip(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Removes a trailing comment that is not inside a string literal.
std::string strip_comment(const std::string& s) {
  bool in_str = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_str = !in_str;
    if (s[i] == '#' && !in_str) return s.substr(0, i);
  }
  return s;
}

Value parse_scalar(const std::string& tok, int line) {
  if (tok.empty()) fail(line, "empty value");
  if (tok.front() == '"') {
    if (tok.size() < 2 || tok.back() != '"') fail(line, "unterminated string");
    return Value{tok.substr(1, tok.size() - 2)};
  }
  if (tok == "true") return Value{true};
  if (tok == "false") return Value{false};
  // Integer first, then float.
  {
    std::int64_t iv = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), iv);
    if (ec == std::errc() && p == tok.data() + tok.size()) return Value{iv};
  }
  try {
    std::size_t used = 0;
    const double dv = std::stod(tok, &used);
    if (used == tok.size()) return Value{dv};
  } catch (...) {
  }
  fail(line, "cannot parse value '" + tok + "'");
}

std::vector<std::string> split_array_items(const std::string& body, int line) {
  std::vector<std::string> items;
  std::string cur;
  bool in_str = false;
  int depth = 0;
  for (char ch : body) {
    if (ch == '"') in_str = !in_str;
    if (!in_str && ch == '[') ++depth;
    if (!in_str && ch == ']') --depth;
    if (ch == ',' && !in_str && depth == 0) {
      items.push_back(strip(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (in_str) fail(line, "unterminated string in array");
  const std::string last = strip(cur);
  if (!last.empty()) items.push_back(last);
  return items;
}

Value parse_value(const std::string& tok, int line) {
  if (!tok.empty() && tok.front() == '[') {
    if (tok.back() != ']') fail(line, "unterminated array");
    std::vector<Value> items;
    for (const auto& item : split_array_items(tok.substr(1, tok.size() - 2), line))
      items.push_back(parse_value(item, line));
    return Value{items};
  }
  return parse_scalar(tok, line);
}

}  // namespace

Document parse(const std::string& text) {
  Document doc;
  std::string table;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string s = strip(strip_comment(raw));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') fail(line, "unterminated table header");
      table = strip(s.substr(1, s.size() - 2));
      if (table.empty()) fail(line, "empty table name");
      doc[table];
      continue;
    }
    const std::size_t eq = s.find('=');
    if (eq == std::string::npos) fail(line, "expected key = value");
    const std::string key = strip(s.substr(0, eq));
    const std::string val = strip(s.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    if (doc[table].count(key)) fail(line, "duplicate key '" + key + "'");
    doc[table][key] = parse_value(val, line);
  }
  return doc;
}

Document parse_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open file: " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse(ss.str());
}

}  // namespace cotube::toml
