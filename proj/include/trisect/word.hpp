#pragma once

#include <algorithm>
#include <cstdlib>
#include <span>
#include <string>
#include <vector>

namespace trisect {

/// A letter is a non-zero integer: +k is the k-th generator (1-based), -k its
/// inverse.
using Letter = int;
using Word = std::vector<Letter>;

inline Word free_reduce(std::span<const Letter> w) {
  Word out;
  out.reserve(w.size());
  for (Letter l : w) {
    if (!out.empty() && out.back() == -l)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

inline Word cyclic_reduce(std::span<const Letter> w) {
  Word r = free_reduce(w);
  std::size_t lo = 0, hi = r.size();
  while (hi - lo >= 2 && r[lo] == -r[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word(r.begin() + static_cast<std::ptrdiff_t>(lo),
              r.begin() + static_cast<std::ptrdiff_t>(hi));
}

inline Word inverse(std::span<const Letter> w) {
  Word out(w.rbegin(), w.rend());
  for (Letter &l : out)
    l = -l;
  return out;
}

inline Word concat(std::span<const Letter> a, std::span<const Letter> b) {
  Word out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

inline Word power(std::span<const Letter> w, int n) {
  Word base = n < 0 ? inverse(w) : Word(w.begin(), w.end());
  Word out;
  for (int i = 0; i < std::abs(n); ++i)
    out.insert(out.end(), base.begin(), base.end());
  return free_reduce(out);
}

inline Word rotate_left(std::span<const Letter> w, std::size_t k) {
  Word out(w.begin(), w.end());
  if (!out.empty())
    std::rotate(out.begin(),
                out.begin() + static_cast<std::ptrdiff_t>(k % out.size()),
                out.end());
  return out;
}

/// Total order on letters used by every canonical form: x1 < X1 < x2 < X2 ...
inline int letter_rank(Letter l) { return 2 * std::abs(l) - (l > 0 ? 1 : 0); }

inline bool word_less(std::span<const Letter> a, std::span<const Letter> b) {
  return std::lexicographical_compare(
      a.begin(), a.end(), b.begin(), b.end(),
      [](Letter x, Letter y) { return letter_rank(x) < letter_rank(y); });
}

namespace detail {

// Start of the least rotation under letter_rank (two-pointer scan, linear,
// no allocation).
inline std::size_t least_rotation(std::span<const Letter> w) {
  const std::size_t n = w.size();
  std::size_t i = 0, j = 1, k = 0;
  while (i < n && j < n && k < n) {
    int a = letter_rank(w[(i + k) % n]), b = letter_rank(w[(j + k) % n]);
    if (a == b) {
      ++k;
      continue;
    }
    if (a > b)
      i += k + 1;
    else
      j += k + 1;
    if (i == j)
      ++j;
    k = 0;
  }
  return std::min(i, j);
}

} // namespace detail

/// Least representative of the cyclic word under rotation and inversion.
/// The input must already be cyclically reduced.
inline Word min_cyclic_form(std::span<const Letter> w) {
  if (w.empty())
    return {};
  Word a = rotate_left(w, detail::least_rotation(w));
  const Word inv = inverse(w);
  Word b = rotate_left(inv, detail::least_rotation(inv));
  return word_less(b, a) ? b : a;
}

inline bool cyclically_equal_up_to_inversion(std::span<const Letter> a,
                                             std::span<const Letter> b) {
  if (a.size() != b.size())
    return false;
  return min_cyclic_form(cyclic_reduce(a)) == min_cyclic_form(cyclic_reduce(b));
}

/// Exponent sum of each generator 1..n.
inline std::vector<long long> exponent_sums(std::span<const Letter> w, int n) {
  std::vector<long long> sums(static_cast<std::size_t>(n), 0);
  for (Letter l : w)
    sums[static_cast<std::size_t>(std::abs(l) - 1)] += l > 0 ? 1 : -1;
  return sums;
}

inline int max_generator(std::span<const Letter> w) {
  int m = 0;
  for (Letter l : w)
    m = std::max(m, std::abs(l));
  return m;
}

} // namespace trisect
