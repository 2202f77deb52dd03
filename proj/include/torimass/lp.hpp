#pragma once

// Dense two-phase simplex for small standard-form programs
//   minimize c.x  subject to  A x = b,  x >= 0.
// Bland's rule keeps it finite under degeneracy; in the rational profile the
// result is exact.

#include <vector>

#include "torimass/linalg.hpp"

namespace torimass {

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

template <class S>
struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  S objective = 0;
  Vec<S> x;
};

template <class S>
LpResult<S> solve_standard_lp(const DenseMatrix<S>& a, const Vec<S>& b, const Vec<S>& c,
                              double tol = 1e-12);

// Is q a convex combination of the given points?
template <class S>
bool in_convex_hull(const std::vector<Vec<S>>& points, const Vec<S>& q, double tol = kTieTolerance);

extern template LpResult<Rational> solve_standard_lp(const DenseMatrix<Rational>&, const Vec<Rational>&,
                                                     const Vec<Rational>&, double);
extern template LpResult<double> solve_standard_lp(const DenseMatrix<double>&, const Vec<double>&,
                                                   const Vec<double>&, double);
extern template bool in_convex_hull(const std::vector<Vec<Rational>>&, const Vec<Rational>&, double);
extern template bool in_convex_hull(const std::vector<Vec<double>>&, const Vec<double>&, double);

}  // namespace torimass
