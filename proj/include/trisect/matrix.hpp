#pragma once

#include "trisect/integer.hpp"
#include "trisect/verdict.hpp"

#include <cstddef>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace trisect {

/// Dense row-major matrix of exact integers.
class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long long>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto &row : init) {
      if (row.size() != cols_)
        throw Error("ragged matrix initializer");
      for (long long v : row)
        data_.emplace_back(v);
    }
  }

  static IntegerMatrix identity(std::size_t n) {
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer &operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  const Integer &operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  bool operator==(const IntegerMatrix &) const = default;

  bool is_zero() const {
    for (const auto &v : data_)
      if (v != 0)
        return false;
    return true;
  }

  bool is_symmetric() const {
    if (rows_ != cols_)
      return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i))
          return false;
    return true;
  }

  IntegerMatrix transpose() const {
    IntegerMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntegerMatrix operator*(const IntegerMatrix &a,
                                 const IntegerMatrix &b) {
    if (a.cols_ != b.rows_)
      throw Error("matrix dimension mismatch in product");
    IntegerMatrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Integer &aik = a(i, k);
        if (aik == 0)
          continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          out(i, j) += aik * b(k, j);
      }
    return out;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j)
      return;
    for (std::size_t c = 0; c < cols_; ++c)
      std::swap((*this)(i, c), (*this)(j, c));
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j)
      return;
    for (std::size_t r = 0; r < rows_; ++r)
      std::swap((*this)(r, i), (*this)(r, j));
  }
  // row_i += f * row_j
  void add_row(std::size_t i, std::size_t j, const Integer &f) {
    if (f == 0)
      return;
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(i, c) += f * (*this)(j, c);
  }
  // col_i += f * col_j
  void add_col(std::size_t i, std::size_t j, const Integer &f) {
    if (f == 0)
      return;
    for (std::size_t r = 0; r < rows_; ++r)
      (*this)(r, i) += f * (*this)(r, j);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c)
      (*this)(i, c) = -(*this)(i, c);
  }
  void negate_col(std::size_t i) {
    for (std::size_t r = 0; r < rows_; ++r)
      (*this)(r, i) = -(*this)(r, i);
  }

  std::string str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < cols_; ++j)
        os << (j ? "," : "") << (*this)(i, j);
      os << ']';
    }
    os << ']';
    return os.str();
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) determinant.
inline Integer determinant(IntegerMatrix m) {
  if (m.rows() != m.cols())
    throw Error("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0)
    return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && m(p, k) == 0)
        ++p;
      if (p == n)
        return 0;
      m.swap_rows(k, p);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j)
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
    prev = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

struct SmithForm {
  IntegerMatrix S; // diagonal, d1 | d2 | ...
  IntegerMatrix U; // rows x rows, unimodular
  IntegerMatrix V; // cols x cols, unimodular
  // U * M * V == S
};

/// Smith normal form with transforms. Repeatedly moves the smallest non-zero
/// entry of the trailing block to the pivot, clears its row and column, and
/// folds any non-divisible entry back into the pivot row.
inline SmithForm smith_normal_form(const IntegerMatrix &M) {
  const std::size_t m = M.rows(), n = M.cols();
  SmithForm f{M, IntegerMatrix::identity(m), IntegerMatrix::identity(n)};
  IntegerMatrix &D = f.S;
  const std::size_t r = std::min(m, n);

  for (std::size_t t = 0; t < r; ++t) {
    for (;;) {
      // locate smallest non-zero entry in D[t.., t..]
      bool found = false;
      std::size_t pi = t, pj = t;
      Integer best;
      for (std::size_t i = t; i < m; ++i)
        for (std::size_t j = t; j < n; ++j)
          if (D(i, j) != 0 && (!found || abs(D(i, j)) < best)) {
            found = true;
            best = abs(D(i, j));
            pi = i;
            pj = j;
          }
      if (!found)
        return f;
      D.swap_rows(t, pi);
      f.U.swap_rows(t, pi);
      D.swap_cols(t, pj);
      f.V.swap_cols(t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (D(i, t) == 0)
          continue;
        Integer q = D(i, t) / D(t, t);
        D.add_row(i, t, -q);
        f.U.add_row(i, t, -q);
        if (D(i, t) != 0)
          clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (D(t, j) == 0)
          continue;
        Integer q = D(t, j) / D(t, t);
        D.add_col(j, t, -q);
        f.V.add_col(j, t, -q);
        if (D(t, j) != 0)
          clean = false;
      }
      if (!clean)
        continue;

      // divisibility: fold an offending row into the pivot row
      bool divides = true;
      for (std::size_t i = t + 1; i < m && divides; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (D(i, j) % D(t, t) != 0) {
            D.add_row(t, i, 1);
            f.U.add_row(t, i, 1);
            divides = false;
            break;
          }
      if (divides)
        break;
    }
    if (D(t, t) < 0) {
      D.negate_row(t);
      f.U.negate_row(t);
    }
  }
  return f;
}

inline std::vector<Integer> invariant_factors(const IntegerMatrix &M) {
  SmithForm f = smith_normal_form(M);
  std::vector<Integer> out;
  const std::size_t r = std::min(M.rows(), M.cols());
  for (std::size_t i = 0; i < r; ++i)
    out.push_back(f.S(i, i));
  return out;
}

/// Finitely generated abelian group Z^free_rank + sum Z/t_i, each t_i > 1.
struct AbelianGroup {
  std::size_t free_rank = 0;
  std::vector<Integer> torsion;

  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool is_free() const { return torsion.empty(); }
  bool operator==(const AbelianGroup &) const = default;

  std::string str() const {
    if (is_trivial())
      return "0";
    std::string s;
    if (free_rank == 1)
      s = "Z";
    else if (free_rank > 1)
      s = "Z^" + std::to_string(free_rank);
    for (const auto &t : torsion)
      s += (s.empty() ? "" : " + ") + std::string("Z/") + t.str();
    return s;
  }

  json to_json() const {
    json t = json::array();
    for (const auto &x : torsion)
      t.push_back(x.str());
    return {{"free_rank", free_rank}, {"torsion", t}};
  }
};

/// Cokernel Z^rows / column span of M.
inline AbelianGroup cokernel(const IntegerMatrix &M) {
  AbelianGroup g;
  auto d = invariant_factors(M);
  std::size_t nonzero = 0;
  for (const auto &x : d) {
    if (x == 0)
      continue;
    ++nonzero;
    if (x != 1)
      g.torsion.push_back(x);
  }
  g.free_rank = M.rows() - nonzero;
  return g;
}

} // namespace trisect
