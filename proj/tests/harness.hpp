#pragma once

// Random diagram generators shared by the property tests and the acceptance
// runner.

#include "trisect/kirby.hpp"
#include "trisect/moves.hpp"

#include <random>
#include <vector>

namespace trisect::harness {

inline TrisectionDiagram sum_of(const std::vector<GenusOne> &parts) {
  TrisectionDiagram t = genus_zero();
  for (auto p : parts)
    t = connected_sum(t, genus_one(p));
  return t;
}

/// Catalog summands with k1 >= g - 1: at most one summand with k1 = 0.
inline std::vector<GenusOne> random_classified_parts(std::mt19937 &rng, int g) {
  static const std::vector<GenusOne> full{GenusOne::S1xS3, GenusOne::Stab1};
  static const std::vector<GenusOne> short_{GenusOne::CP2, GenusOne::CP2bar,
                                            GenusOne::Stab2, GenusOne::Stab3};
  std::vector<GenusOne> parts;
  std::uniform_int_distribution<int> coin(0, 1);
  bool one_short = coin(rng) == 1;
  for (int h = 0; h < g; ++h) {
    if (one_short && h == 0)
      parts.push_back(short_[std::uniform_int_distribution<std::size_t>(0, 3)(rng)]);
    else
      parts.push_back(full[std::uniform_int_distribution<std::size_t>(0, 1)(rng)]);
  }
  std::shuffle(parts.begin(), parts.end(), rng);
  return parts;
}

/// Up to `slides` random trivial-guide handleslides within the cut systems,
/// skipping any that would push a word past `max_len` letters.
inline TrisectionDiagram scramble(const TrisectionDiagram &t, std::mt19937 &rng,
                                  int slides, std::size_t max_len = 32,
                                  std::vector<Slide> *log = nullptr) {
  if (t.genus < 2)
    return t;
  TrisectionDiagram d = t;
  std::uniform_int_distribution<int> sys(0, 2), sgn(0, 1);
  std::uniform_int_distribution<std::size_t> idx(0, static_cast<std::size_t>(t.genus) - 1);
  for (int n = 0; n < slides; ++n) {
    Slide s{sys(rng), idx(rng), idx(rng), sgn(rng) ? 1 : -1, {}};
    if (s.i == s.j)
      continue;
    TrisectionDiagram next = apply_slide(d, s);
    if (next.system(s.system)[s.i].word().size() > max_len)
      continue;
    d = next;
    if (log)
      log->push_back(s);
  }
  return d;
}

/// (g,k)-standard Heegaard pair: alpha on (1,0); beta repeats alpha on the
/// first k handles and is (0,1) elsewhere.
inline HeegaardDiagram standard_background(int g, int k) {
  std::vector<Curve> a, b;
  for (int h = 1; h <= g; ++h) {
    a.push_back(Curve::from_template(g, h, 1, 0));
    b.push_back(h <= k ? Curve::from_template(g, h, 1, 0) : Curve::from_template(g, h, 0, 1));
  }
  return {CutSystem(g, a), CutSystem(g, b)};
}

inline LinkingMatrix random_symmetric(std::mt19937 &rng, std::size_t n, int bound = 3) {
  std::uniform_int_distribution<int> d(-bound, bound);
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      m(i, j) = m(j, i) = d(rng);
  return LinkingMatrix(m);
}

} // namespace trisect::harness
