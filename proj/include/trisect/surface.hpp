#pragma once

#include "trisect/integer.hpp"
#include "trisect/matrix.hpp"
#include "trisect/verdict.hpp"
#include "trisect/word.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace trisect {

/// Homology class on the closed genus-g surface in the symplectic basis
/// (a1, b1, ..., ag, bg) with <a_i, b_i> = +1.
class HomologyClass {
public:
  HomologyClass() = default;
  explicit HomologyClass(int genus)
      : genus_(genus), coeffs_(2 * static_cast<std::size_t>(genus)) {
    if (genus < 0)
      throw Error("negative genus");
  }
  HomologyClass(int genus, std::vector<Integer> coeffs)
      : genus_(genus), coeffs_(std::move(coeffs)) {
    if (genus < 0 || coeffs_.size() != 2 * static_cast<std::size_t>(genus))
      throw Error("homology class needs exactly 2g coefficients");
  }
  static HomologyClass from(int genus, std::initializer_list<long long> c) {
    std::vector<Integer> v(c.begin(), c.end());
    return HomologyClass(genus, std::move(v));
  }
  /// p * a_h + q * b_h, handle h is 1-based.
  static HomologyClass slope(int genus, int handle, const Integer &p,
                             const Integer &q) {
    HomologyClass h(genus);
    h.a(handle) = p;
    h.b(handle) = q;
    return h;
  }

  int genus() const { return genus_; }
  const std::vector<Integer> &coeffs() const { return coeffs_; }

  Integer &a(int h) { return coeffs_[2 * static_cast<std::size_t>(h - 1)]; }
  Integer &b(int h) { return coeffs_[2 * static_cast<std::size_t>(h - 1) + 1]; }
  const Integer &a(int h) const {
    return coeffs_[2 * static_cast<std::size_t>(h - 1)];
  }
  const Integer &b(int h) const {
    return coeffs_[2 * static_cast<std::size_t>(h - 1) + 1];
  }

  bool is_zero() const {
    for (const auto &c : coeffs_)
      if (c != 0)
        return false;
    return true;
  }

  HomologyClass &operator+=(const HomologyClass &o) {
    check_genus(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  HomologyClass &operator-=(const HomologyClass &o) {
    check_genus(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
      coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  friend HomologyClass operator+(HomologyClass a, const HomologyClass &b) {
    return a += b;
  }
  friend HomologyClass operator-(HomologyClass a, const HomologyClass &b) {
    return a -= b;
  }
  friend HomologyClass operator*(const Integer &k, HomologyClass a) {
    for (auto &c : a.coeffs_)
      c *= k;
    return a;
  }
  HomologyClass operator-() const { return Integer(-1) * *this; }
  bool operator==(const HomologyClass &) const = default;

  /// Same class on a larger surface, handles shifted up by `offset`.
  HomologyClass embed(int genus, int offset) const {
    HomologyClass h(genus);
    for (int i = 1; i <= genus_; ++i) {
      h.a(i + offset) = a(i);
      h.b(i + offset) = b(i);
    }
    return h;
  }

  std::string str() const {
    std::string s;
    for (int h = 1; h <= genus_; ++h) {
      for (int k = 0; k < 2; ++k) {
        const Integer &c = k == 0 ? a(h) : b(h);
        if (c == 0)
          continue;
        std::string basis = (k == 0 ? "a" : "b") + std::to_string(h);
        if (!s.empty())
          s += c < 0 ? " - " : " + ";
        else if (c < 0)
          s += "-";
        Integer m = abs(c);
        if (m != 1)
          s += m.str();
        s += basis;
      }
    }
    return s.empty() ? "0" : s;
  }

  json to_json() const {
    json j = json::array();
    for (const auto &c : coeffs_)
      j.push_back(c.str());
    return j;
  }
  static HomologyClass from_json(int genus, const json &j) {
    std::vector<Integer> v;
    for (const auto &x : j)
      v.emplace_back(x.get<std::string>());
    return HomologyClass(genus, std::move(v));
  }

private:
  void check_genus(const HomologyClass &o) const {
    if (o.genus_ != genus_)
      throw Error("homology classes of different genus");
  }

  int genus_ = 0;
  std::vector<Integer> coeffs_;
};

/// u^T J v for the block-diagonal symplectic form.
inline Integer algebraic_intersection(const HomologyClass &u,
                                      const HomologyClass &v) {
  if (u.genus() != v.genus())
    throw Error("algebraic_intersection: genus mismatch");
  Integer s = 0;
  for (int h = 1; h <= u.genus(); ++h)
    s += u.a(h) * v.b(h) - u.b(h) * v.a(h);
  return s;
}

// Generator numbering on the surface: x_h -> 2h-1, y_h -> 2h.
inline Letter x_gen(int h) { return 2 * h - 1; }
inline Letter y_gen(int h) { return 2 * h; }
inline int handle_of(Letter l) { return (std::abs(l) + 1) / 2; }

/// Cyclically reduced word in the free group on x1..xg, y1..yg representing
/// the free homotopy class of a curve. The surface relator is not quotiented.
class SurfaceWord {
public:
  SurfaceWord() = default;
  SurfaceWord(int genus, std::span<const Letter> letters)
      : genus_(genus), letters_(cyclic_reduce(letters)) {
    for (Letter l : letters_)
      if (l == 0 || std::abs(l) > 2 * genus)
        throw Error("surface word letter out of range for genus " +
                    std::to_string(genus));
  }

  int genus() const { return genus_; }
  const Word &letters() const { return letters_; }
  std::size_t size() const { return letters_.size(); }
  bool empty() const { return letters_.empty(); }
  bool operator==(const SurfaceWord &) const = default;

  SurfaceWord embed(int genus, int offset) const {
    Word w = letters_;
    for (Letter &l : w)
      l += (l > 0 ? 2 * offset : -2 * offset);
    return SurfaceWord(genus, w);
  }

  /// Handles touched by the word, ascending.
  std::vector<int> support() const {
    std::vector<bool> seen(static_cast<std::size_t>(genus_) + 1);
    for (Letter l : letters_)
      seen[static_cast<std::size_t>(handle_of(l))] = true;
    std::vector<int> out;
    for (int h = 1; h <= genus_; ++h)
      if (seen[static_cast<std::size_t>(h)])
        out.push_back(h);
    return out;
  }

  std::string str() const {
    std::string s;
    for (Letter l : letters_) {
      if (!s.empty())
        s += ' ';
      bool isx = std::abs(l) % 2 == 1;
      s += l > 0 ? (isx ? 'x' : 'y') : (isx ? 'X' : 'Y');
      s += std::to_string(handle_of(l));
    }
    return s;
  }

private:
  int genus_ = 0;
  Word letters_;
};

inline HomologyClass abelianize(const SurfaceWord &w) {
  HomologyClass h(w.genus());
  for (Letter l : w.letters()) {
    int hd = handle_of(l);
    Integer &c = std::abs(l) % 2 == 1 ? h.a(hd) : h.b(hd);
    c += l > 0 ? 1 : -1;
  }
  return h;
}

/// The surface relator [x1,y1]...[xg,yg].
inline Word surface_relator(int genus) {
  Word w;
  for (int h = 1; h <= genus; ++h) {
    w.push_back(x_gen(h));
    w.push_back(y_gen(h));
    w.push_back(-x_gen(h));
    w.push_back(-y_gen(h));
  }
  return w;
}

/// 2g x n matrix whose columns are the given classes.
inline IntegerMatrix class_matrix(std::span<const HomologyClass> classes,
                                  int genus) {
  IntegerMatrix m(2 * static_cast<std::size_t>(genus), classes.size());
  for (std::size_t j = 0; j < classes.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i)
      m(i, j) = classes[j].coeffs()[i];
  return m;
}

inline json classes_to_json(std::span<const HomologyClass> classes) {
  json j = json::array();
  for (const auto &c : classes)
    j.push_back(c.to_json());
  return j;
}

/// Homological shadow of "the curves bound a complete disk system": g classes,
/// pairwise orthogonal, spanning a primitive rank-g sublattice.
inline Verdict lagrangian_verdict(std::span<const HomologyClass> classes,
                                  int genus) {
  for (const auto &c : classes)
    if (c.genus() != genus)
      throw Error("lagrangian_verdict: genus mismatch");
  json w = {{"kind", "lagrangian"},
            {"genus", genus},
            {"classes", classes_to_json(classes)}};
  if (classes.size() != static_cast<std::size_t>(genus)) {
    w["failure"] = "count";
    return Verdict::refuted("expected " + std::to_string(genus) +
                                " classes, got " +
                                std::to_string(classes.size()),
                            w);
  }
  for (std::size_t i = 0; i < classes.size(); ++i)
    for (std::size_t j = i + 1; j < classes.size(); ++j) {
      Integer p = algebraic_intersection(classes[i], classes[j]);
      if (p != 0) {
        w["failure"] = "pairing";
        w["i"] = i;
        w["j"] = j;
        w["value"] = p.str();
        return Verdict::refuted("classes " + std::to_string(i + 1) + " and " +
                                    std::to_string(j + 1) + " pair to " +
                                    p.str(),
                                w);
      }
    }
  auto d = invariant_factors(class_matrix(classes, genus));
  json factors = json::array();
  for (const auto &x : d)
    factors.push_back(x.str());
  w["invariant_factors"] = factors;
  for (const auto &x : d)
    if (x != 1) {
      w["failure"] = "factor";
      w["value"] = x.str();
      return Verdict::refuted("invariant factor " + x.str() +
                                  ": not a primitive rank-g summand",
                              w);
    }
  return Verdict::verified("isotropic primitive rank-g sublattice", w);
}

} // namespace trisect
