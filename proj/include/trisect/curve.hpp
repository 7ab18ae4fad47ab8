#pragma once

#include "trisect/surface.hpp"

#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace trisect {

/// Exact model for a curve living in one handle's punctured torus:
/// slope p * a_handle + q * b_handle with gcd(p, q) = 1.
struct SlopeTemplate {
  int handle = 1;
  long long p = 1;
  long long q = 0;

  // Slopes beyond this are rejected rather than risk overflow in the
  // word model (a slope's word has |p| + |q| letters).
  static constexpr long long max_abs = 1'000'000;

  /// Orientation-normalized copy: first non-zero coordinate positive.
  SlopeTemplate normalized() const {
    if (p < 0 || (p == 0 && q < 0))
      return {handle, -p, -q};
    return *this;
  }
  bool same_curve(const SlopeTemplate &o) const {
    return normalized() == o.normalized();
  }
  bool operator==(const SlopeTemplate &) const = default;

  std::string str() const {
    return "@" + std::to_string(handle) + "(" + std::to_string(p) + "," +
           std::to_string(q) + ")";
  }
};

inline long long gcd_ll(long long a, long long b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b) {
    long long r = a % b;
    a = b;
    b = r;
  }
  return a;
}

/// Christoffel word of the slope: the primitive element of F(x_h, y_h) whose
/// conjugacy class is the simple closed curve of that slope.
inline Word christoffel_word(int handle, long long p, long long q) {
  long long ap = std::llabs(p), aq = std::llabs(q);
  Letter x = p < 0 ? -x_gen(handle) : x_gen(handle);
  Letter y = q < 0 ? -y_gen(handle) : y_gen(handle);
  Word w;
  const long long n = ap + aq;
  w.reserve(static_cast<std::size_t>(n));
  for (long long i = 1; i <= n; ++i) {
    bool up = (i * aq) / n > ((i - 1) * aq) / n;
    w.push_back(up ? y : x);
  }
  return w;
}

/// A simple closed curve on the genus-g surface: its word, its homology class
/// and, when known exactly, a slope template.
class Curve {
public:
  Curve() = default;

  static Curve from_template(int genus, SlopeTemplate t) {
    if (t.handle < 1 || t.handle > genus)
      throw Error("template handle " + std::to_string(t.handle) +
                  " out of range for genus " + std::to_string(genus));
    if (t.p == 0 && t.q == 0)
      throw Error("template slope (0,0) is not a curve");
    if (std::llabs(t.p) > SlopeTemplate::max_abs ||
        std::llabs(t.q) > SlopeTemplate::max_abs)
      throw Error("template slope too large");
    if (gcd_ll(t.p, t.q) != 1)
      throw Error("template slope (" + std::to_string(t.p) + "," +
                  std::to_string(t.q) + ") is not coprime");
    Curve c;
    c.word_ = SurfaceWord(genus, christoffel_word(t.handle, t.p, t.q));
    c.homology_ = HomologyClass::slope(genus, t.handle, t.p, t.q);
    c.template_ = t;
    return c;
  }
  static Curve from_template(int genus, int handle, long long p, long long q) {
    return from_template(genus, SlopeTemplate{handle, p, q});
  }

  static Curve from_word(SurfaceWord w) {
    if (w.empty())
      throw Error("empty word is not an essential curve");
    Curve c;
    c.homology_ = abelianize(w);
    c.word_ = std::move(w);
    return c;
  }

  /// Full constructor; checks homology == abelianize(word) and template
  /// agreement.
  Curve(SurfaceWord w, HomologyClass h, std::optional<SlopeTemplate> t)
      : word_(std::move(w)), homology_(std::move(h)), template_(t) {
    if (!(abelianize(word_) == homology_))
      throw Error("curve homology does not match its word");
    if (template_ &&
        !(HomologyClass::slope(word_.genus(), template_->handle, template_->p,
                               template_->q) == homology_))
      throw Error("curve template does not match its homology class");
  }

  int genus() const { return word_.genus(); }
  const SurfaceWord &word() const { return word_; }
  const HomologyClass &homology() const { return homology_; }
  const std::optional<SlopeTemplate> &slope() const { return template_; }
  bool has_template() const { return template_.has_value(); }

  std::vector<int> support() const {
    if (template_)
      return {template_->handle};
    return word_.support();
  }

  /// Same unoriented curve: equal templates up to orientation, otherwise
  /// equal cyclic words up to inversion.
  bool same_curve(const Curve &o) const {
    if (genus() != o.genus())
      return false;
    if (template_ && o.template_)
      return template_->same_curve(*o.template_);
    return cyclically_equal_up_to_inversion(word_.letters(), o.word_.letters());
  }

  Curve embed(int genus, int offset) const {
    Curve c;
    c.word_ = word_.embed(genus, offset);
    c.homology_ = homology_.embed(genus, offset);
    if (template_)
      c.template_ = SlopeTemplate{template_->handle + offset, template_->p,
                                  template_->q};
    return c;
  }

  /// Drops the template; used after moves that leave the template family.
  Curve without_template() const {
    Curve c = *this;
    c.template_.reset();
    return c;
  }

  std::string str() const { return template_ ? template_->str() : word_.str(); }

private:
  SurfaceWord word_;
  HomologyClass homology_;
  std::optional<SlopeTemplate> template_;
};

/// Reattaches a template to a curve whose word lies in one handle and is
/// conjugate (up to inversion) to the Christoffel word of its slope.
inline std::optional<SlopeTemplate> recover_template(const Curve &c) {
  if (c.has_template())
    return c.slope();
  auto sup = c.word().support();
  if (sup.size() != 1)
    return std::nullopt;
  const int h = sup[0];
  const Integer &P = c.homology().a(h);
  const Integer &Q = c.homology().b(h);
  if (abs(P) > SlopeTemplate::max_abs || abs(Q) > SlopeTemplate::max_abs)
    return std::nullopt;
  long long p = static_cast<long long>(P), q = static_cast<long long>(Q);
  if ((p == 0 && q == 0) || gcd_ll(p, q) != 1)
    return std::nullopt;
  if (c.word().size() != static_cast<std::size_t>(std::llabs(p) + std::llabs(q)))
    return std::nullopt;
  if (!cyclically_equal_up_to_inversion(c.word().letters(),
                                        christoffel_word(h, p, q)))
    return std::nullopt;
  return SlopeTemplate{h, p, q};
}

inline Curve with_recovered_template(const Curve &c) {
  if (c.has_template())
    return c;
  if (auto t = recover_template(c))
    return Curve::from_template(c.genus(), *t);
  return c;
}

struct IntersectionCount {
  Integer value;
  bool exact = false;
  bool operator==(const IntersectionCount &) const = default;
};

/// Exact geometric intersection for template pairs; otherwise the
/// |algebraic intersection| lower bound, flagged inexact.
inline IntersectionCount geometric_intersection(const Curve &c1,
                                                const Curve &c2) {
  if (c1.genus() != c2.genus())
    throw Error("geometric_intersection: genus mismatch");
  if (c1.has_template() && c2.has_template()) {
    const auto &s = *c1.slope();
    const auto &t = *c2.slope();
    if (s.handle != t.handle)
      return {0, true};
    return {abs(Integer(s.p) * t.q - Integer(s.q) * t.p), true};
  }
  return {abs(algebraic_intersection(c1.homology(), c2.homology())), false};
}

} // namespace trisect
