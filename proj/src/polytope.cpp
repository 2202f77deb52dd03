#include "torimass/polytope.hpp"

#include <algorithm>
#include <cmath>

#include "torimass/hull.hpp"
#include "torimass/linalg.hpp"
#include "torimass/lp.hpp"

namespace torimass {

template <class S>
Polytope<S> Polytope<S>::hull_of(const std::vector<Vec<S>>& points, double tol) {
  if (points.empty()) throw InvalidInput("polytope: empty vertex list");
  Polytope out;
  out.dim_ = points.front().size();
  HullSummary<S> hull = convex_hull(points, tol);
  out.affine_dim_ = hull.affine_dim;
  out.volume_ = hull.volume;
  for (std::size_t i : hull.extreme) out.vertices_.push_back(points[i]);
  std::sort(out.vertices_.begin(), out.vertices_.end());
  out.vertices_.erase(std::unique(out.vertices_.begin(), out.vertices_.end()), out.vertices_.end());
  return out;
}

template <class S>
Polytope<S> minkowski_combination(const Polytope<S>& p, const Polytope<S>& q, const S& t) {
  if (p.dim() != q.dim()) throw DimensionMismatch("minkowski_combination: dimension mismatch");
  if (t < S(0) || t > S(1)) throw InvalidInput("minkowski_combination: t outside [0,1]");
  const S s = S(1) - t;
  std::vector<Vec<S>> sums;
  sums.reserve(p.vertices().size() * q.vertices().size());
  for (const auto& a : p.vertices()) {
    for (const auto& b : q.vertices()) {
      Vec<S> c(a.size());
      for (std::size_t i = 0; i < a.size(); ++i) c[i] = s * a[i] + t * b[i];
      sums.push_back(std::move(c));
    }
  }
  return Polytope<S>::hull_of(sums);
}

template <class S>
MixedVolumePolynomial<S> mixed_volume_polynomial(const Polytope<S>& p, const Polytope<S>& q) {
  if (p.dim() != q.dim()) throw DimensionMismatch("mixed_volume_polynomial: dimension mismatch");
  const std::size_t n = p.dim();
  DenseMatrix<S> vandermonde(n + 1, n + 1);
  Vec<S> values(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    const S t = S(Arith<S>::from_rational(Rational(static_cast<long>(k), static_cast<long>(n))));
    values[k] = minkowski_combination(p, q, t).volume();
    S power = 1;
    for (std::size_t j = 0; j <= n; ++j) {
      vandermonde(k, j) = power;
      power *= t;
    }
  }
  auto coeffs = solve(std::move(vandermonde), std::move(values), 0.0);
  if (!coeffs) throw InternalError("mixed_volume_polynomial: singular interpolation system");
  return MixedVolumePolynomial<S>{std::move(*coeffs)};
}

template <class S>
bool contains(const Polytope<S>& outer, const Polytope<S>& inner, double tol) {
  if (outer.dim() != inner.dim()) throw DimensionMismatch("contains: dimension mismatch");
  for (const auto& q : inner.vertices()) {
    if (std::find(outer.vertices().begin(), outer.vertices().end(), q) != outer.vertices().end()) continue;
    if (!in_convex_hull(outer.vertices(), q, tol)) return false;
  }
  return true;
}

template <class S>
bool same_vertices(const Polytope<S>& a, const Polytope<S>& b, double tol) {
  if (a.dim() != b.dim() || a.vertices().size() != b.vertices().size()) return false;
  if constexpr (Arith<S>::kExact) {
    return a.vertices() == b.vertices();
  } else {
    for (const auto& v : a.vertices()) {
      bool found = false;
      for (const auto& w : b.vertices()) {
        double d = 0;
        for (std::size_t i = 0; i < v.size(); ++i) d = std::max(d, std::fabs(v[i] - w[i]));
        if (d <= tol) {
          found = true;
          break;
        }
      }
      if (!found) return false;
    }
    return true;
  }
}

template class Polytope<Rational>;
template class Polytope<double>;
template Polytope<Rational> minkowski_combination(const Polytope<Rational>&, const Polytope<Rational>&,
                                                  const Rational&);
template Polytope<double> minkowski_combination(const Polytope<double>&, const Polytope<double>&,
                                                const double&);
template MixedVolumePolynomial<Rational> mixed_volume_polynomial(const Polytope<Rational>&,
                                                                 const Polytope<Rational>&);
template MixedVolumePolynomial<double> mixed_volume_polynomial(const Polytope<double>&,
                                                               const Polytope<double>&);
template bool contains(const Polytope<Rational>&, const Polytope<Rational>&, double);
template bool contains(const Polytope<double>&, const Polytope<double>&, double);
template bool same_vertices(const Polytope<Rational>&, const Polytope<Rational>&, double);
template bool same_vertices(const Polytope<double>&, const Polytope<double>&, double);

}  // namespace torimass
