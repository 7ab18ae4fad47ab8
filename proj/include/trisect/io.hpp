#pragma once

// Text formats. A diagram file starts with a header line
//
//   trisection genus=G [params=(k1,k2,k3)]
//   heegaard genus=G
//   heegaard-kirby genus=G
//
// followed by `alpha:`, `beta:` (and `gamma:` for trisections) lines holding
// curves separated by `;`. Heegaard-Kirby files add
//
//   link: <curve> framing=(surface|INT) ; ...
//   target m=M
//
// Presentations use `presentation generators=N` and `relators: w ; w ; ...`,
// matrices `matrix size=N` followed by N rows of integers. `#` starts a
// comment everywhere.

#include "trisect/ac.hpp"
#include "trisect/curve_io.hpp"
#include "trisect/kirby.hpp"

#include <map>
#include <sstream>
#include <variant>

namespace trisect {

using DiagramObject = std::variant<HeegaardDiagram, TrisectionDiagram, HeegaardKirbyDiagram>;

namespace detail {

struct SourceLine {
  int number;
  std::string text; // comment stripped
};

inline std::vector<SourceLine> source_lines(std::string_view text) {
  std::vector<SourceLine> out;
  int n = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos)
      end = text.size();
    ++n;
    std::string_view l = text.substr(pos, end - pos);
    if (auto h = l.find('#'); h != std::string_view::npos)
      l = l.substr(0, h);
    if (!l.empty() && l.back() == '\r')
      l.remove_suffix(1);
    if (!trim(l).empty())
      out.push_back({n, std::string(l)});
    pos = end + 1;
  }
  return out;
}

// Pieces of `s` between `;`, each with its starting column.
inline std::vector<std::pair<std::string_view, int>> split_semis(std::string_view s,
                                                                 int col0) {
  std::vector<std::pair<std::string_view, int>> out;
  if (trim(s).empty())
    return out;
  std::size_t start = 0;
  for (;;) {
    std::size_t e = s.find(';', start);
    std::string_view piece = s.substr(start, e == std::string_view::npos ? e : e - start);
    out.push_back({piece, col0 + static_cast<int>(start)});
    if (e == std::string_view::npos)
      break;
    start = e + 1;
  }
  return out;
}

struct Header {
  std::string kind;
  std::map<std::string, std::pair<std::string, int>> attrs; // value, column
  int line = 0;
};

inline Header parse_header(const SourceLine &l) {
  Header h;
  h.line = l.number;
  auto toks = split_tokens(l.text, 1);
  h.kind = std::string(toks.at(0).first);
  for (std::size_t i = 1; i < toks.size(); ++i) {
    auto [tok, col] = toks[i];
    auto eq = tok.find('=');
    if (eq == std::string_view::npos || eq == 0)
      throw ParseError("expected key=value, got '" + std::string(tok) + "'", l.number, col);
    std::string key(tok.substr(0, eq));
    if (h.attrs.count(key))
      throw ParseError("duplicate attribute '" + key + "'", l.number, col);
    h.attrs[key] = {std::string(tok.substr(eq + 1)), col + static_cast<int>(eq) + 1};
  }
  return h;
}

inline long long attr_int(const Header &h, const std::string &key, long long lo) {
  auto it = h.attrs.find(key);
  if (it == h.attrs.end())
    throw ParseError("header lacks " + key + "=", h.line, 1);
  long long v = 0;
  if (!parse_ll(it->second.first, v) || v < lo)
    throw ParseError(key + " must be an integer >= " + std::to_string(lo), h.line,
                     it->second.second);
  return v;
}

inline void allow_attrs(const Header &h, std::initializer_list<const char *> keys) {
  for (const auto &[k, v] : h.attrs)
    if (std::find_if(keys.begin(), keys.end(), [&](const char *s) { return k == s; }) ==
        keys.end())
      throw ParseError("unknown attribute '" + k + "'", h.line, v.second - 1 -
                                                                    static_cast<int>(k.size()));
}

struct Section {
  std::string_view body;
  int line;
  int column; // of body
};

inline std::map<std::string, Section>
sections(const std::vector<SourceLine> &lines,
         std::initializer_list<const char *> allowed) {
  std::map<std::string, Section> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto &l = lines[i];
    std::string_view t = l.text;
    auto colon = t.find(':');
    std::string_view key = trim(t.substr(0, colon));
    int kcol = static_cast<int>(t.find_first_not_of(" \t")) + 1;
    std::string k(key);
    // `target m=M` has no colon
    if (colon == std::string_view::npos) {
      auto toks = split_tokens(t, 1);
      k = std::string(toks.at(0).first);
      if (k != "target")
        throw ParseError("expected '<section>:' line", l.number, kcol);
      colon = static_cast<std::size_t>(toks[0].second - 1) + k.size() - 1;
    }
    if (std::find_if(allowed.begin(), allowed.end(), [&](const char *s) { return k == s; }) ==
        allowed.end())
      throw ParseError("unexpected line '" + k + "'", l.number, kcol);
    if (out.count(k))
      throw ParseError("duplicate '" + k + "' line", l.number, kcol);
    out[k] = {std::string_view(l.text).substr(colon + 1), l.number,
              static_cast<int>(colon) + 2};
  }
  return out;
}

inline const Section &need(const std::map<std::string, Section> &s, const std::string &k,
                           int header_line) {
  auto it = s.find(k);
  if (it == s.end())
    throw ParseError("missing '" + k + ":' line", header_line, 1);
  return it->second;
}

inline CutSystem parse_system(const Section &s, int genus, const char *name) {
  std::vector<Curve> cs;
  for (auto [piece, col] : split_semis(s.body, s.column))
    cs.push_back(parse_curve(piece, genus, s.line, col));
  if (cs.size() != static_cast<std::size_t>(genus))
    throw ParseError(std::string(name) + " has " + std::to_string(cs.size()) +
                         " curves, genus is " + std::to_string(genus),
                     s.line, s.column);
  try {
    return CutSystem(genus, std::move(cs));
  } catch (const ParseError &) {
    throw;
  } catch (const Error &e) {
    throw ParseError(std::string(name) + ": " + e.what(), s.line, s.column);
  }
}

inline std::string system_line(const char *name, const CutSystem &cs) {
  std::string s = name;
  s += ":";
  for (std::size_t i = 0; i < cs.size(); ++i)
    s += (i ? " ; " : " ") + cs[i].str();
  return s + "\n";
}

inline TrisectionParams parse_params(const Header &h, int genus) {
  const auto &[v, col] = h.attrs.at("params");
  std::string_view t = v;
  if (t.size() < 2 || t.front() != '(' || t.back() != ')')
    throw ParseError("params must read (k1,k2,k3)", h.line, col);
  std::vector<int> ks;
  std::string inner(t.substr(1, t.size() - 2));
  std::stringstream ss(inner);
  std::string item;
  while (std::getline(ss, item, ',')) {
    long long k = 0;
    if (!parse_ll(trim(item), k) || k < 0 || k > genus)
      throw ParseError("params entry '" + item + "' outside 0.." + std::to_string(genus),
                       h.line, col);
    ks.push_back(static_cast<int>(k));
  }
  if (ks.size() != 3)
    throw ParseError("params must have three entries", h.line, col);
  return {genus, ks[0], ks[1], ks[2]};
}

} // namespace detail

/// Parses any of the three diagram kinds. Errors are ParseError with the
/// line and column of the offending text.
inline DiagramObject parse_diagram(std::string_view text) {
  auto lines = detail::source_lines(text);
  if (lines.empty())
    throw ParseError("empty diagram file", 1, 1);
  auto h = detail::parse_header(lines[0]);
  if (h.kind == "trisection") {
    detail::allow_attrs(h, {"genus", "params"});
    int g = static_cast<int>(detail::attr_int(h, "genus", 0));
    auto s = detail::sections(lines, {"alpha", "beta", "gamma"});
    CutSystem a = detail::parse_system(detail::need(s, "alpha", h.line), g, "alpha");
    CutSystem b = detail::parse_system(detail::need(s, "beta", h.line), g, "beta");
    CutSystem c = detail::parse_system(detail::need(s, "gamma", h.line), g, "gamma");
    std::optional<TrisectionParams> p;
    if (h.attrs.count("params"))
      p = detail::parse_params(h, g);
    return TrisectionDiagram(std::move(a), std::move(b), std::move(c), p);
  }
  if (h.kind == "heegaard") {
    detail::allow_attrs(h, {"genus"});
    int g = static_cast<int>(detail::attr_int(h, "genus", 0));
    auto s = detail::sections(lines, {"alpha", "beta"});
    return HeegaardDiagram(detail::parse_system(detail::need(s, "alpha", h.line), g, "alpha"),
                           detail::parse_system(detail::need(s, "beta", h.line), g, "beta"));
  }
  if (h.kind == "heegaard-kirby") {
    detail::allow_attrs(h, {"genus"});
    int g = static_cast<int>(detail::attr_int(h, "genus", 0));
    auto s = detail::sections(lines, {"alpha", "beta", "link", "target"});
    HeegaardDiagram bg(detail::parse_system(detail::need(s, "alpha", h.line), g, "alpha"),
                       detail::parse_system(detail::need(s, "beta", h.line), g, "beta"));
    std::vector<FramedComponent> link;
    if (auto it = s.find("link"); it != s.end()) {
      const auto &sec = it->second;
      for (auto [piece, col] : detail::split_semis(sec.body, sec.column)) {
        auto f = piece.rfind("framing=");
        if (f == std::string_view::npos)
          throw ParseError("link component lacks framing=", sec.line, col);
        FramedComponent fc{parse_curve(piece.substr(0, f), g, sec.line, col), std::nullopt};
        std::string_view fv = detail::trim(piece.substr(f + 8));
        int fcol = col + static_cast<int>(f) + 8;
        if (fv != "surface") {
          long long v = 0;
          if (!detail::parse_ll(fv, v))
            throw ParseError("framing must be 'surface' or an integer", sec.line, fcol);
          fc.framing = Integer(v);
        }
        link.push_back(std::move(fc));
      }
    }
    const auto &t = detail::need(s, "target", h.line);
    std::string_view tv = detail::trim(t.body);
    long long m = -1;
    if (tv.substr(0, 2) != "m=" || !detail::parse_ll(tv.substr(2), m) || m < 0)
      throw ParseError("expected target m=M", t.line, t.column);
    try {
      return HeegaardKirbyDiagram(std::move(bg), std::move(link), static_cast<int>(m));
    } catch (const ParseError &) {
      throw;
    } catch (const Error &e) {
      throw ParseError(e.what(), h.line, 1);
    }
  }
  throw ParseError("unknown diagram kind '" + h.kind + "'", h.line, 1);
}

inline TrisectionDiagram parse_trisection(std::string_view text) {
  auto d = parse_diagram(text);
  if (auto *t = std::get_if<TrisectionDiagram>(&d))
    return *t;
  throw ParseError("expected a trisection file", 1, 1);
}

inline HeegaardKirbyDiagram parse_heegaard_kirby(std::string_view text) {
  auto d = parse_diagram(text);
  if (auto *t = std::get_if<HeegaardKirbyDiagram>(&d))
    return *t;
  throw ParseError("expected a heegaard-kirby file", 1, 1);
}

inline std::string format_diagram(const TrisectionDiagram &t) {
  std::string s = "trisection genus=" + std::to_string(t.genus);
  if (t.declared)
    s += " params=(" + std::to_string(t.declared->k1) + "," +
         std::to_string(t.declared->k2) + "," + std::to_string(t.declared->k3) + ")";
  s += "\n";
  return s + detail::system_line("alpha", t.alpha) + detail::system_line("beta", t.beta) +
         detail::system_line("gamma", t.gamma);
}

inline std::string format_diagram(const HeegaardDiagram &d) {
  return "heegaard genus=" + std::to_string(d.genus) + "\n" +
         detail::system_line("alpha", d.alpha) + detail::system_line("beta", d.beta);
}

inline std::string format_diagram(const HeegaardKirbyDiagram &h) {
  std::string s = "heegaard-kirby genus=" + std::to_string(h.genus) + "\n" +
                  detail::system_line("alpha", h.background.alpha) +
                  detail::system_line("beta", h.background.beta) + "link:";
  for (std::size_t i = 0; i < h.link.size(); ++i)
    s += (i ? " ; " : " ") + h.link[i].curve.str() + " framing=" + h.link[i].framing_str();
  return s + "\ntarget m=" + std::to_string(h.m) + "\n";
}

inline std::string format_diagram(const DiagramObject &d) {
  return std::visit([](const auto &x) { return format_diagram(x); }, d);
}

// ---------------------------------------------------------------------------
// Presentations and matrices

inline BalancedPresentation parse_presentation(std::string_view text) {
  auto lines = detail::source_lines(text);
  if (lines.empty())
    throw ParseError("empty presentation file", 1, 1);
  auto h = detail::parse_header(lines[0]);
  if (h.kind != "presentation")
    throw ParseError("expected 'presentation generators=N'", h.line, 1);
  detail::allow_attrs(h, {"generators"});
  int n = static_cast<int>(detail::attr_int(h, "generators", 1));
  auto s = detail::sections(lines, {"relators"});
  const auto &sec = detail::need(s, "relators", h.line);
  std::vector<Word> rels;
  for (auto [piece, col] : detail::split_semis(sec.body, sec.column))
    rels.push_back(parse_group_word(piece, n, sec.line, col));
  if (rels.size() != static_cast<std::size_t>(n))
    throw ParseError("need " + std::to_string(n) + " relators, got " +
                         std::to_string(rels.size()),
                     sec.line, sec.column);
  return BalancedPresentation(n, std::move(rels));
}

inline std::string format_presentation(const BalancedPresentation &p) {
  std::string s = "presentation generators=" + std::to_string(p.n) + "\nrelators:";
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    s += (i ? " ; " : " ") + group_word_str(p.relators[i]);
  return s + "\n";
}

inline LinkingMatrix parse_matrix(std::string_view text) {
  auto lines = detail::source_lines(text);
  if (lines.empty())
    throw ParseError("empty matrix file", 1, 1);
  auto h = detail::parse_header(lines[0]);
  if (h.kind != "matrix")
    throw ParseError("expected 'matrix size=N'", h.line, 1);
  detail::allow_attrs(h, {"size"});
  auto n = static_cast<std::size_t>(detail::attr_int(h, "size", 0));
  if (lines.size() - 1 != n)
    throw ParseError("expected " + std::to_string(n) + " rows, got " +
                         std::to_string(lines.size() - 1),
                     h.line, 1);
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    auto toks = detail::split_tokens(lines[i + 1].text, 1);
    if (toks.size() != n)
      throw ParseError("row needs " + std::to_string(n) + " entries",
                       lines[i + 1].number, 1);
    for (std::size_t j = 0; j < n; ++j) {
      try {
        m(i, j) = Integer(std::string(toks[j].first));
      } catch (const std::exception &) {
        throw ParseError("bad integer '" + std::string(toks[j].first) + "'",
                         lines[i + 1].number, toks[j].second);
      }
    }
  }
  try {
    return LinkingMatrix(m);
  } catch (const Error &e) {
    throw ParseError(e.what(), h.line, 1);
  }
}

inline std::string format_matrix(const LinkingMatrix &m) {
  std::size_t n = m.size();
  std::string s = "matrix size=" + std::to_string(n) + "\n";
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j)
      s += (j ? " " : "") + m(i, j).str();
    s += "\n";
  }
  return s;
}

} // namespace trisect
