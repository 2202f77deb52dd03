#include "torimass/lp.hpp"

#include <limits>

namespace torimass {

namespace {

template <class S>
class Tableau {
 public:
  Tableau(const DenseMatrix<S>& a, const Vec<S>& b, double tol)
      : m_(a.rows()), n_(a.cols()), t_(a.rows() + 1, a.cols() + a.rows() + 1), basis_(a.rows()),
        tol_(tol) {
    for (std::size_t i = 0; i < m_; ++i) {
      const bool flip = b[i] < S(0);
      for (std::size_t j = 0; j < n_; ++j) t_(i, j) = flip ? S(-a(i, j)) : a(i, j);
      t_(i, n_ + i) = 1;
      t_(i, rhs()) = flip ? S(-b[i]) : b[i];
      basis_[i] = n_ + i;
    }
  }

  bool positive(const S& v) const {
    if constexpr (Arith<S>::kExact) return v > 0;
    else return v > tol_;
  }
  bool negative(const S& v) const {
    if constexpr (Arith<S>::kExact) return v < 0;
    else return v < -tol_;
  }

  std::size_t rhs() const { return n_ + m_; }

  void set_objective(const Vec<S>& cost) {
    for (std::size_t j = 0; j <= rhs(); ++j) t_(m_, j) = j < rhs() ? cost[j] : S(0);
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i]) continue;
      const S cb = cost[basis_[i]];
      if (cb == S(0)) continue;
      for (std::size_t j = 0; j <= rhs(); ++j) t_(m_, j) -= cb * t_(i, j);
    }
  }

  // Runs Bland-rule pivots over columns [0, limit). Returns false on unbounded.
  bool optimize(std::size_t limit) {
    for (;;) {
      std::size_t enter = limit;
      for (std::size_t j = 0; j < limit; ++j) {
        if (negative(t_(m_, j))) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      std::size_t leave = m_;
      S best_ratio = 0;
      for (std::size_t i = 0; i < m_; ++i) {
        if (!active_[i] || !positive(t_(i, enter))) continue;
        S ratio = t_(i, rhs()) / t_(i, enter);
        if (leave == m_ || ratio < best_ratio || (ratio == best_ratio && basis_[i] < basis_[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m_) return false;
      pivot(leave, enter);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    const S inv = S(1) / t_(r, c);
    for (std::size_t j = 0; j <= rhs(); ++j) t_(r, j) *= inv;
    t_(r, c) = 1;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == r || (i < m_ && !active_[i])) continue;
      const S factor = t_(i, c);
      if (factor == S(0)) continue;
      for (std::size_t j = 0; j <= rhs(); ++j) t_(i, j) -= factor * t_(r, j);
      t_(i, c) = 0;
    }
    basis_[r] = c;
  }

  // After phase one: pivot artificials out of the basis or retire their row.
  void expel_artificials() {
    for (std::size_t i = 0; i < m_; ++i) {
      if (!active_[i] || basis_[i] < n_) continue;
      std::size_t col = n_;
      for (std::size_t j = 0; j < n_; ++j) {
        if (positive(t_(i, j)) || negative(t_(i, j))) {
          col = j;
          break;
        }
      }
      if (col == n_) {
        active_[i] = false;
      } else {
        pivot(i, col);
      }
    }
  }

  S objective_value() const { return S(-t_(m_, rhs())); }

  Vec<S> primal() const {
    Vec<S> x(n_, S(0));
    for (std::size_t i = 0; i < m_; ++i)
      if (active_[i] && basis_[i] < n_) x[basis_[i]] = t_(i, rhs());
    return x;
  }

  std::size_t m_;
  std::size_t n_;
  DenseMatrix<S> t_;
  std::vector<std::size_t> basis_;
  std::vector<bool> active_ = std::vector<bool>(m_, true);
  double tol_;
};

}  // namespace

template <class S>
LpResult<S> solve_standard_lp(const DenseMatrix<S>& a, const Vec<S>& b, const Vec<S>& c, double tol) {
  if (b.size() != a.rows() || c.size() != a.cols()) throw DimensionMismatch("lp: inconsistent sizes");
  Tableau<S> tab(a, b, tol);
  const std::size_t n = a.cols();
  const std::size_t m = a.rows();

  Vec<S> phase1(n + m, S(0));
  for (std::size_t j = n; j < n + m; ++j) phase1[j] = 1;
  tab.set_objective(phase1);
  tab.optimize(n + m);
  LpResult<S> result;
  if (tab.positive(tab.objective_value())) {
    result.status = LpStatus::kInfeasible;
    return result;
  }
  tab.expel_artificials();

  Vec<S> phase2(n + m, S(0));
  for (std::size_t j = 0; j < n; ++j) phase2[j] = c[j];
  tab.set_objective(phase2);
  if (!tab.optimize(n)) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.objective = tab.objective_value();
  result.x = tab.primal();
  return result;
}

template <class S>
bool in_convex_hull(const std::vector<Vec<S>>& points, const Vec<S>& q, double tol) {
  if (points.empty()) return false;
  const std::size_t d = q.size();
  DenseMatrix<S> a(d + 1, points.size());
  Vec<S> b(d + 1, S(0));
  for (std::size_t j = 0; j < points.size(); ++j) {
    if (points[j].size() != d) throw DimensionMismatch("in_convex_hull: dimension mismatch");
    for (std::size_t i = 0; i < d; ++i) a(i, j) = points[j][i];
    a(d, j) = 1;
  }
  for (std::size_t i = 0; i < d; ++i) b[i] = q[i];
  b[d] = 1;
  Vec<S> cost(points.size(), S(0));
  return solve_standard_lp(a, b, cost, tol).status == LpStatus::kOptimal;
}

template LpResult<Rational> solve_standard_lp(const DenseMatrix<Rational>&, const Vec<Rational>&,
                                              const Vec<Rational>&, double);
template LpResult<double> solve_standard_lp(const DenseMatrix<double>&, const Vec<double>&,
                                            const Vec<double>&, double);
template bool in_convex_hull(const std::vector<Vec<Rational>>&, const Vec<Rational>&, double);
template bool in_convex_hull(const std::vector<Vec<double>>&, const Vec<double>&, double);

}  // namespace torimass
