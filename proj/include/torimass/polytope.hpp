#pragma once

// Vertex-represented convex polytopes: hulls, volumes, Minkowski
// combinations, the mixed-volume polynomial t -> vol((1-t)P + tQ), and
// containment.

#include <cstddef>
#include <vector>

#include "torimass/scalar.hpp"

namespace torimass {

template <class S>
class Polytope {
 public:
  // Hull of the given points with an irredundant, lexicographically sorted
  // vertex list. Throws InvalidInput on empty input, DimensionMismatch on
  // inconsistent coordinates.
  static Polytope hull_of(const std::vector<Vec<S>>& points, double tol = kTieTolerance);

  std::size_t dim() const { return dim_; }
  std::size_t affine_dim() const { return affine_dim_; }
  const std::vector<Vec<S>>& vertices() const { return vertices_; }
  const S& volume() const { return volume_; }
  bool full_dimensional() const { return affine_dim_ == dim_; }

  friend bool operator==(const Polytope& a, const Polytope& b) {
    return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
  }

 private:
  Polytope() = default;

  std::size_t dim_ = 0;
  std::size_t affine_dim_ = 0;
  std::vector<Vec<S>> vertices_;
  S volume_ = 0;
};

template <class S>
Polytope<S> hull_normalize(const std::vector<Vec<S>>& points) {
  return Polytope<S>::hull_of(points);
}

template <class S>
S volume(const Polytope<S>& p) {
  return p.volume();
}

// Hull of {(1-t)p + tq}; t must lie in [0, 1].
template <class S>
Polytope<S> minkowski_combination(const Polytope<S>& p, const Polytope<S>& q, const S& t);

// Coefficients c_0..c_n with vol((1-t)P + tQ) = sum_k c_k t^k, obtained by
// interpolating the volumes at t = k/n.
template <class S>
struct MixedVolumePolynomial {
  std::vector<S> coeffs;

  std::size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  S operator()(const S& t) const {
    S acc = 0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * t + coeffs[k];
    return acc;
  }
};

template <class S>
MixedVolumePolynomial<S> mixed_volume_polynomial(const Polytope<S>& p, const Polytope<S>& q);

// True iff every vertex of inner lies in outer (one LP per vertex).
template <class S>
bool contains(const Polytope<S>& outer, const Polytope<S>& inner, double tol = kTieTolerance);

// Vertex-set equality up to tol (exact in the rational profile).
template <class S>
bool same_vertices(const Polytope<S>& a, const Polytope<S>& b, double tol = kTieTolerance);

extern template class Polytope<Rational>;
extern template class Polytope<double>;
extern template Polytope<Rational> minkowski_combination(const Polytope<Rational>&, const Polytope<Rational>&,
                                                         const Rational&);
extern template Polytope<double> minkowski_combination(const Polytope<double>&, const Polytope<double>&,
                                                       const double&);
extern template MixedVolumePolynomial<Rational> mixed_volume_polynomial(const Polytope<Rational>&,
                                                                        const Polytope<Rational>&);
extern template MixedVolumePolynomial<double> mixed_volume_polynomial(const Polytope<double>&,
                                                                      const Polytope<double>&);
extern template bool contains(const Polytope<Rational>&, const Polytope<Rational>&, double);
extern template bool contains(const Polytope<double>&, const Polytope<double>&, double);
extern template bool same_vertices(const Polytope<Rational>&, const Polytope<Rational>&, double);
extern template bool same_vertices(const Polytope<double>&, const Polytope<double>&, double);

}  // namespace torimass
