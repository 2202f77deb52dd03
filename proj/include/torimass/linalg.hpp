#pragma once

// Small dense linear algebra over an exact or tolerant scalar. Sizes here are
// at most a handful of rows, so everything is plain Gaussian elimination.

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "torimass/scalar.hpp"

namespace torimass {

template <class S>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(a, c), (*this)(b, c));
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

namespace detail {

template <class S>
double magnitude(const S& v) {
  return std::fabs(Arith<S>::to_double(v));
}

// Picks the pivot row in column c among rows [from, rows). Exact scalars take
// the first nonzero entry; doubles take the largest entry above tol * scale.
template <class S>
std::optional<std::size_t> pick_pivot(const DenseMatrix<S>& m, std::size_t from, std::size_t c,
                                      double abs_tol) {
  if constexpr (Arith<S>::kExact) {
    for (std::size_t r = from; r < m.rows(); ++r) {
      if (m(r, c) != 0) return r;
    }
    return std::nullopt;
  } else {
    std::optional<std::size_t> best;
    double best_mag = abs_tol;
    for (std::size_t r = from; r < m.rows(); ++r) {
      double mag = std::fabs(m(r, c));
      if (mag > best_mag) {
        best_mag = mag;
        best = r;
      }
    }
    return best;
  }
}

template <class S>
double max_abs_entry(const DenseMatrix<S>& m) {
  double scale = 0.0;
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) scale = std::max(scale, magnitude(m(r, c)));
  return scale;
}

}  // namespace detail

// Reduces m in place to row echelon form, returning the pivot columns.
template <class S>
std::vector<std::size_t> row_echelon(DenseMatrix<S>& m, double tol = kTieTolerance) {
  const double abs_tol = Arith<S>::kExact ? 0.0 : tol * std::max(1.0, detail::max_abs_entry(m));
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < m.cols() && row < m.rows(); ++c) {
    auto p = detail::pick_pivot(m, row, c, abs_tol);
    if (!p) continue;
    m.swap_rows(row, *p);
    for (std::size_t r = row + 1; r < m.rows(); ++r) {
      if (Arith<S>::kExact ? m(r, c) == 0 : m(r, c) == S(0)) continue;
      S factor = m(r, c) / m(row, c);
      for (std::size_t k = c; k < m.cols(); ++k) m(r, k) -= factor * m(row, k);
      m(r, c) = 0;
    }
    pivots.push_back(c);
    ++row;
  }
  return pivots;
}

template <class S>
std::size_t rank(DenseMatrix<S> m, double tol = kTieTolerance) {
  return row_echelon(m, tol).size();
}

template <class S>
S determinant(DenseMatrix<S> m) {
  const std::size_t n = m.rows();
  S det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    auto p = detail::pick_pivot(m, c, c, 0.0);
    if (!p) return S(0);
    if (*p != c) {
      m.swap_rows(c, *p);
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m(r, c) == S(0)) continue;
      S factor = m(r, c) / m(c, c);
      for (std::size_t k = c; k < n; ++k) m(r, k) -= factor * m(c, k);
    }
  }
  return det;
}

// Solves the square system a x = b; nullopt when a is singular (to tolerance).
template <class S>
std::optional<Vec<S>> solve(DenseMatrix<S> a, Vec<S> b, double tol = kTieTolerance) {
  const std::size_t n = a.rows();
  const double abs_tol = Arith<S>::kExact ? 0.0 : tol * std::max(1.0, detail::max_abs_entry(a));
  for (std::size_t c = 0; c < n; ++c) {
    auto p = detail::pick_pivot(a, c, c, abs_tol);
    if (!p) return std::nullopt;
    a.swap_rows(c, *p);
    std::swap(b[c], b[*p]);
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a(r, c) == S(0)) continue;
      S factor = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= factor * a(c, k);
      b[r] -= factor * b[c];
    }
  }
  Vec<S> x(n, S(0));
  for (std::size_t i = n; i-- > 0;) {
    S acc = b[i];
    for (std::size_t k = i + 1; k < n; ++k) acc -= a(i, k) * x[k];
    x[i] = acc / a(i, i);
  }
  return x;
}

// Normal of the hyperplane through d points in R^d, via signed cofactors of
// the (d-1) x d matrix of edge vectors. Zero when the points are dependent.
template <class S>
Vec<S> hyperplane_normal(const std::vector<const Vec<S>*>& pts) {
  const std::size_t d = pts.front()->size();
  Vec<S> normal(d, S(0));
  if (d == 1) {
    normal[0] = 1;
    return normal;
  }
  DenseMatrix<S> edges(d - 1, d);
  for (std::size_t r = 1; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) edges(r - 1, c) = (*pts[r])[c] - (*pts[0])[c];
  for (std::size_t skip = 0; skip < d; ++skip) {
    DenseMatrix<S> minor(d - 1, d - 1);
    for (std::size_t r = 0; r + 1 < d; ++r) {
      std::size_t cc = 0;
      for (std::size_t c = 0; c < d; ++c) {
        if (c == skip) continue;
        minor(r, cc++) = edges(r, c);
      }
    }
    S cof = determinant(std::move(minor));
    normal[skip] = (skip % 2 == 0) ? cof : S(-cof);
  }
  return normal;
}

}  // namespace torimass
