#pragma once

#include "trisect/diagram.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <string>
#include <vector>

namespace trisect {

// ---------------------------------------------------------------------------
// Canonical form

namespace detail {

inline std::string curve_key(const Curve &c, const std::vector<int> &perm) {
  if (c.has_template()) {
    auto t = c.slope()->normalized();
    return "@" + std::to_string(perm[static_cast<std::size_t>(t.handle)]) + "(" +
           std::to_string(t.p) + "," + std::to_string(t.q) + ")";
  }
  Word w;
  for (Letter l : c.word().letters()) {
    int h = handle_of(l);
    int nh = perm[static_cast<std::size_t>(h)];
    Letter base = std::abs(l) % 2 == 1 ? x_gen(nh) : y_gen(nh);
    w.push_back(l > 0 ? base : -base);
  }
  std::string s = "w";
  for (Letter l : min_cyclic_form(w))
    s += ":" + std::to_string(l);
  return s;
}

} // namespace detail

/// Lexicographically least description of the diagram over handle
/// permutations, curve orientations and curve order within each system.
/// Systems keep their roles. Word curves that are recognizably slope curves
/// are compared as templates.
inline std::string canonical_form(const TrisectionDiagram &t) {
  std::array<std::vector<Curve>, 3> sys;
  for (int s = 0; s < 3; ++s)
    for (const auto &c : t.system(s).curves())
      sys[static_cast<std::size_t>(s)].push_back(with_recovered_template(c));
  std::vector<int> perm(static_cast<std::size_t>(t.genus) + 1);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  bool first = true;
  do {
    std::string s = "g" + std::to_string(t.genus);
    for (int k = 0; k < 3; ++k) {
      std::vector<std::string> keys;
      for (const auto &c : sys[static_cast<std::size_t>(k)])
        keys.push_back(detail::curve_key(c, perm));
      std::sort(keys.begin(), keys.end());
      s += k == 0 ? "|a" : k == 1 ? "|b" : "|c";
      for (const auto &key : keys)
        s += " " + key;
    }
    if (first || s < best) {
      best = s;
      first = false;
    }
  } while (std::next_permutation(perm.begin() + 1, perm.end()));
  return best;
}

inline bool isomorphic(const TrisectionDiagram &a, const TrisectionDiagram &b) {
  return a.genus == b.genus && canonical_form(a) == canonical_form(b);
}

// ---------------------------------------------------------------------------
// Built-in genus-zero and genus-one diagrams

enum class GenusOne { CP2, CP2bar, S1xS3, Stab1, Stab2, Stab3 };

inline constexpr std::array<GenusOne, 6> all_genus_one{
    GenusOne::CP2,   GenusOne::CP2bar, GenusOne::S1xS3,
    GenusOne::Stab1, GenusOne::Stab2,  GenusOne::Stab3};

inline std::string name(GenusOne d) {
  switch (d) {
  case GenusOne::CP2:
    return "CP2";
  case GenusOne::CP2bar:
    return "CP2bar";
  case GenusOne::S1xS3:
    return "S1xS3";
  case GenusOne::Stab1:
    return "S4-stab1";
  case GenusOne::Stab2:
    return "S4-stab2";
  case GenusOne::Stab3:
    return "S4-stab3";
  }
  return "";
}

inline std::optional<GenusOne> genus_one_from_name(const std::string &s) {
  for (auto d : all_genus_one)
    if (name(d) == s)
      return d;
  return std::nullopt;
}

inline TrisectionParams genus_one_params(GenusOne d) {
  switch (d) {
  case GenusOne::CP2:
  case GenusOne::CP2bar:
    return {1, 0, 0, 0};
  case GenusOne::S1xS3:
    return {1, 1, 1, 1};
  case GenusOne::Stab1:
    return {1, 1, 0, 0};
  case GenusOne::Stab2:
    return {1, 0, 1, 0};
  case GenusOne::Stab3:
    return {1, 0, 0, 1};
  }
  return {};
}

inline TrisectionDiagram genus_zero() { return TrisectionDiagram(); }

namespace detail {
inline CutSystem slope_system(long long p, long long q) {
  return CutSystem(1, {Curve::from_template(1, 1, p, q)});
}
} // namespace detail

/// The six standard genus-one diagrams. Slopes: 0 = (1,0), inf = (0,1).
/// CP2 is (0, inf, 1) and its reverse (0, inf, -1); S1xS3 repeats one curve;
/// the i-th stabilization repeats the curve across the pair bounding X_i.
inline TrisectionDiagram genus_one(GenusOne d) {
  using detail::slope_system;
  TrisectionParams p = genus_one_params(d);
  switch (d) {
  case GenusOne::CP2:
    return {slope_system(1, 0), slope_system(0, 1), slope_system(1, 1), p};
  case GenusOne::CP2bar:
    return {slope_system(1, 0), slope_system(0, 1), slope_system(1, -1), p};
  case GenusOne::S1xS3:
    return {slope_system(1, 0), slope_system(1, 0), slope_system(1, 0), p};
  case GenusOne::Stab1:
    return {slope_system(1, 0), slope_system(1, 0), slope_system(0, 1), p};
  case GenusOne::Stab2:
    return {slope_system(1, 0), slope_system(0, 1), slope_system(0, 1), p};
  case GenusOne::Stab3:
    return {slope_system(1, 0), slope_system(0, 1), slope_system(1, 0), p};
  }
  return genus_zero();
}

inline std::array<GenusOne, 3> figure_balanced() {
  return {GenusOne::CP2, GenusOne::CP2bar, GenusOne::S1xS3};
}
inline std::array<GenusOne, 3> figure_stabilizations() {
  return {GenusOne::Stab1, GenusOne::Stab2, GenusOne::Stab3};
}

// ---------------------------------------------------------------------------
// Genus-one recognition

struct GenusOneMatch {
  std::optional<GenusOne> which;
  Verdict verdict;
};

/// Identifies a genus-one diagram among the six standard ones from exact
/// slope data. The balanced k = 0 case is split by the sign of
/// <a,b><b,c><c,a>, which is unchanged by curve reorientation and by
/// orientation-preserving changes of basis and flips under reversal.
inline GenusOneMatch classify_genus_one(const TrisectionDiagram &t) {
  if (t.genus != 1)
    throw Error("classify_genus_one needs a genus-one diagram");
  std::array<Curve, 3> c{with_recovered_template(t.alpha[0]),
                         with_recovered_template(t.beta[0]),
                         with_recovered_template(t.gamma[0])};
  json slopes = json::array();
  for (const auto &x : c) {
    if (!x.has_template())
      return {std::nullopt,
              Verdict::unknown("curve " + x.str() + " has no exact slope")};
    slopes.push_back({x.slope()->p, x.slope()->q});
  }
  json w = {{"kind", "genus_one"}, {"slopes", slopes}};
  std::array<int, 3> k{};
  for (int i = 0; i < 3; ++i) {
    const Curve &u = c[static_cast<std::size_t>(i)];
    const Curve &v = c[static_cast<std::size_t>((i + 1) % 3)];
    auto n = geometric_intersection(u, v).value;
    if (n == 0)
      k[static_cast<std::size_t>(i)] = 1;
    else if (n == 1)
      k[static_cast<std::size_t>(i)] = 0;
    else {
      w["pair"] = i + 1;
      w["intersection"] = n.str();
      return {std::nullopt,
              Verdict::refuted("pair " + std::to_string(i + 1) + " meets " +
                                   n.str() + " times: boundary is a lens space",
                               w)};
    }
  }
  std::optional<GenusOne> which;
  if (k == std::array<int, 3>{1, 1, 1})
    which = GenusOne::S1xS3;
  else if (k == std::array<int, 3>{1, 0, 0})
    which = GenusOne::Stab1;
  else if (k == std::array<int, 3>{0, 1, 0})
    which = GenusOne::Stab2;
  else if (k == std::array<int, 3>{0, 0, 1})
    which = GenusOne::Stab3;
  else if (k == std::array<int, 3>{0, 0, 0}) {
    Integer s = algebraic_intersection(c[0].homology(), c[1].homology()) *
                algebraic_intersection(c[1].homology(), c[2].homology()) *
                algebraic_intersection(c[2].homology(), c[0].homology());
    which = s > 0 ? GenusOne::CP2 : GenusOne::CP2bar;
    w["sign"] = s > 0 ? 1 : -1;
  } else {
    // two of the three curves coincide, which forces the third pair to agree
    w["k"] = k;
    return {std::nullopt,
            Verdict::refuted("inconsistent genus-one pattern", w)};
  }
  w["name"] = name(*which);
  return {which, Verdict::verified(name(*which), w)};
}

} // namespace trisect
