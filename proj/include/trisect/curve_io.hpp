#pragma once

#include "trisect/diagram.hpp"

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

namespace trisect {

/// Syntax or validation error at a 1-based line and column.
class ParseError : public Error {
public:
  ParseError(const std::string &msg, int line, int column)
      : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
        line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_, column_;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

inline std::vector<std::pair<std::string_view, int>>
split_tokens(std::string_view s, int col0) {
  std::vector<std::pair<std::string_view, int>> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
      ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])))
      ++j;
    if (j > i)
      out.push_back({s.substr(i, j - i), col0 + static_cast<int>(i)});
    i = j;
  }
  return out;
}

inline bool parse_ll(std::string_view s, long long &out) {
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

} // namespace detail

/// Letters x1 y1 X1 ... (capital = inverse) over handles 1..genus, unreduced.
inline Word parse_surface_word(std::string_view text, int genus, int line = 1,
                               int column = 1) {
  Word w;
  for (auto [tok, c] : detail::split_tokens(text, column)) {
    char ch = tok.front();
    bool inv = ch == 'X' || ch == 'Y';
    bool isx = ch == 'x' || ch == 'X';
    if (!(isx || ch == 'y' || ch == 'Y') || tok.size() < 2)
      throw ParseError("bad letter '" + std::string(tok) + "'", line, c);
    long long h = 0;
    if (!detail::parse_ll(tok.substr(1), h) || h < 1 || h > genus)
      throw ParseError("letter '" + std::string(tok) +
                           "' references a handle outside 1.." +
                           std::to_string(genus),
                       line, c);
    Letter l = isx ? x_gen(static_cast<int>(h)) : y_gen(static_cast<int>(h));
    w.push_back(inv ? -l : l);
  }
  return w;
}

/// Parses `@h(p,q)` or a whitespace separated word `x1 y2 X1` (capital letter
/// = inverse). `column` is where `text` starts, for error reporting.
inline Curve parse_curve(std::string_view text, int genus, int line = 1,
                         int column = 1) {
  std::string_view t = detail::trim(text);
  int col = column + static_cast<int>(text.find_first_not_of(" \t"));
  if (t.empty())
    throw ParseError("empty curve", line, column);
  if (t.front() == '@') {
    auto open = t.find('('), comma = t.find(','), close = t.find(')');
    if (open == std::string_view::npos || comma == std::string_view::npos ||
        close == std::string_view::npos || !(open < comma && comma < close) ||
        close + 1 != t.size())
      throw ParseError("malformed template '" + std::string(t) +
                           "', expected @h(p,q)",
                       line, col);
    long long h = 0, p = 0, q = 0;
    if (!detail::parse_ll(t.substr(1, open - 1), h) ||
        !detail::parse_ll(detail::trim(t.substr(open + 1, comma - open - 1)), p) ||
        !detail::parse_ll(detail::trim(t.substr(comma + 1, close - comma - 1)), q))
      throw ParseError("malformed template '" + std::string(t) + "'", line, col);
    if (h < 1 || h > genus)
      throw ParseError("handle " + std::to_string(h) + " out of range 1.." +
                           std::to_string(genus),
                       line, col);
    try {
      return Curve::from_template(genus, static_cast<int>(h), p, q);
    } catch (const Error &e) {
      throw ParseError(e.what(), line, col);
    }
  }
  Word w = parse_surface_word(text, genus, line, column);
  SurfaceWord sw(genus, w);
  if (sw.empty())
    throw ParseError("word reduces to the trivial curve", line, col);
  return Curve::from_word(sw);
}

/// Words over generators 1..n written x1 X1 x2 ...
inline Word parse_group_word(std::string_view text, int n, int line = 1,
                             int column = 1) {
  Word w;
  for (auto [tok, c] : detail::split_tokens(text, column)) {
    char ch = tok.front();
    if ((ch != 'x' && ch != 'X') || tok.size() < 2)
      throw ParseError("bad generator '" + std::string(tok) + "'", line, c);
    long long k = 0;
    if (!detail::parse_ll(tok.substr(1), k) || k < 1 || k > n)
      throw ParseError("generator '" + std::string(tok) + "' out of range 1.." +
                           std::to_string(n),
                       line, c);
    w.push_back(ch == 'x' ? static_cast<int>(k) : -static_cast<int>(k));
  }
  return w;
}

inline std::string group_word_str(const Word &w) {
  std::string s;
  for (Letter l : w) {
    if (!s.empty())
      s += ' ';
    s += (l > 0 ? "x" : "X") + std::to_string(std::abs(l));
  }
  return s;
}

// JSON images of diagrams, used inside witnesses.

inline json system_to_json(const CutSystem &cs) {
  json j = json::array();
  for (const auto &c : cs.curves())
    j.push_back(c.str());
  return j;
}

inline CutSystem system_from_json(const json &j, int genus) {
  std::vector<Curve> cs;
  for (const auto &s : j)
    cs.push_back(parse_curve(s.get<std::string>(), genus));
  return CutSystem(genus, std::move(cs));
}

inline json diagram_to_json(const TrisectionDiagram &t) {
  return {{"genus", t.genus},
          {"alpha", system_to_json(t.alpha)},
          {"beta", system_to_json(t.beta)},
          {"gamma", system_to_json(t.gamma)}};
}

inline TrisectionDiagram diagram_from_json(const json &j) {
  int g = j.at("genus");
  return TrisectionDiagram(system_from_json(j.at("alpha"), g),
                           system_from_json(j.at("beta"), g),
                           system_from_json(j.at("gamma"), g));
}

} // namespace trisect
