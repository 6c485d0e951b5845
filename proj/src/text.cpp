#include "torel/text.hpp"

#include <cctype>

namespace torel {

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == '\n') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == sep) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

std::vector<std::string> split_ws(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return trim(pos == std::string::npos ? line : line.substr(0, pos));
}

int parse_int(const std::string& s) {
  if (s.empty()) throw Error(ErrorKind::ParseError, "expected an integer");
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (...) {
    throw Error(ErrorKind::ParseError, "expected an integer, got '" + s + "'");
  }
  if (used != s.size()) throw Error(ErrorKind::ParseError, "expected an integer, got '" + s + "'");
  return v;
}

std::string stem_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  std::string base = slash == std::string::npos ? path : path.substr(slash + 1);
  auto dot = base.find_last_of('.');
  return dot == std::string::npos ? base : base.substr(0, dot);
}

std::optional<std::string> kv(const std::vector<std::string>& toks, const std::string& key) {
  for (const auto& t : toks)
    if (t.size() > key.size() && t.compare(0, key.size(), key) == 0 && t[key.size()] == '=')
      return t.substr(key.size() + 1);
  return std::nullopt;
}

SurfaceSig parse_surface_header(const std::vector<std::string>& toks) {
  if (toks.empty() || toks[0] != "surface") throw Error(ErrorKind::ParseError, "expected surface header");
  auto g = kv(toks, "genus");
  auto h = kv(toks, "holes");
  if (!g || !h) throw Error(ErrorKind::ParseError, "surface header needs genus= and holes=");
  SurfaceSig s{parse_int(*g), parse_int(*h)};
  check_surface(s);
  return s;
}

}  // namespace torel
