#pragma once

// Brute-force references for the simplex projection and the envelope, shared
// by the unit tests and the acceptance binary.

#include <cmath>
#include <functional>
#include <vector>

#include "torimass/envelope.hpp"

namespace torimass::testing {

// Variational inequality for the projection onto a polytope: x is optimal iff
// <c - x, z - x> <= 0 at every vertex z. Returns the worst violation plus
// the feasibility defect.
template <class S>
S projection_residual(const Vec<S>& c, const Vec<S>& x) {
  S worst = 0, sum = 0;
  for (const auto& xi : x) {
    if (-xi > worst) worst = -xi;
    sum += xi;
  }
  if (sum - S(1) > worst) worst = sum - S(1);
  const std::size_t n = c.size();
  for (std::size_t z = 0; z <= n; ++z) {  // z == n is the origin
    S ip = 0;
    for (std::size_t i = 0; i < n; ++i) ip += (c[i] - x[i]) * ((i == z ? S(1) : S(0)) - x[i]);
    if (ip > worst) worst = ip;
  }
  return worst;
}

inline double dist2(const Vec<double>& a, const Vec<double>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += (a[i] - b[i]) * (a[i] - b[i]);
  return d;
}

// All points of Sigma_N on the grid of step 1/k.
inline std::vector<Vec<double>> simplex_grid(std::size_t n, int k) {
  std::vector<Vec<double>> out;
  std::vector<int> idx(n, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
    if (pos == n) {
      Vec<double> x(n);
      for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(idx[i]) / k;
      out.push_back(std::move(x));
      return;
    }
    for (int j = 0; j <= left; ++j) {
      idx[pos] = j;
      rec(pos + 1, left - j);
    }
  };
  rec(0, k);
  return out;
}

// Direct evaluation of the objective at x.
inline double objective(const EnvelopeFunction<double>& e, const Vec<double>& p, const Vec<double>& y,
                 const Vec<double>& x) {
  double mass = 0, lin = 0, sq = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mass += x[i];
    lin += x[i] * y[i];
    sq += x[i] * x[i];
  }
  return (1 - mass) * e.u()(p) + mass * e.v()(p) + lin - sq;
}

// Gap bound between the supremum over Sigma_N and over its 1/k grid.
// Flooring k*x gives a grid point within 1/k per coordinate, hence within
// sqrt(N)/k, and the objective's x-gradient (v-u)1 + y - 2x is bounded by
// sqrt(N)|v-u| + |y| + 2 on Sigma_N.
inline double grid_gap_bound(const EnvelopeFunction<double>& e, const Vec<double>& p, const Vec<double>& y, int k) {
  const double rn = std::sqrt(static_cast<double>(y.size()));
  double ynorm = 0;
  for (double yi : y) ynorm += yi * yi;
  return rn / k * (rn * std::fabs(e.v()(p) - e.u()(p)) + std::sqrt(ynorm) + 2);
}

}  // namespace torimass::testing
