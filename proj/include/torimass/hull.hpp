#pragma once

// Convex hulls in low dimension. IncrementalHull handles the full-dimensional
// case (beneath-beyond with conflict lists); convex_hull() adds the reduction
// of lower-dimensional inputs to a coordinate chart of their affine hull.

#include <cstddef>
#include <vector>

#include "torimass/scalar.hpp"

namespace torimass {

template <class S>
struct HullSummary {
  std::size_t affine_dim = 0;
  std::vector<std::size_t> extreme;  // indices into the input, ascending
  S volume = 0;                      // zero unless affine_dim equals the ambient dimension
};

template <class S>
HullSummary<S> convex_hull(const std::vector<Vec<S>>& points, double tol = kTieTolerance);

template <class S>
class IncrementalHull {
 public:
  IncrementalHull(std::size_t dim, double tol = kTieTolerance);

  // Points may arrive in batches; until d+1 affinely independent points have
  // been seen they are buffered.
  void add(const std::vector<Vec<S>>& batch);

  bool full_dimensional() const { return built_; }
  std::size_t dim() const { return dim_; }
  std::size_t point_count() const { return points_.size(); }
  std::size_t facet_count() const;

  // Lebesgue volume; zero while not full-dimensional.
  S volume() const;
  // Indices of extreme points; requires a full-dimensional hull.
  std::vector<std::size_t> extreme_indices() const;

 private:
  struct Facet {
    std::vector<std::size_t> verts;
    std::vector<std::size_t> nbr;  // nbr[i] is across the ridge opposite verts[i]
    Vec<S> normal;
    S offset = 0;
    std::vector<std::size_t> outside;
    bool alive = true;
  };

  bool try_build();
  std::size_t make_facet(std::vector<std::size_t> verts);
  S distance(const Facet& f, const Vec<S>& p) const { return dot(f.normal, p) - f.offset; }
  bool above(const Facet& f, const Vec<S>& p) const;
  void assign(std::size_t point, const std::vector<std::size_t>& candidates);
  void process();
  void insert(std::size_t facet, std::size_t point);
  void update_scale(const std::vector<Vec<S>>& batch);

  std::size_t dim_;
  double tol_;
  double abs_tol_ = 0.0;
  double scale_ = 0.0;
  bool built_ = false;
  std::vector<Vec<S>> points_;
  std::vector<Facet> facets_;
  std::vector<std::size_t> worklist_;
  Vec<S> interior_;
};

extern template HullSummary<Rational> convex_hull(const std::vector<Vec<Rational>>&, double);
extern template HullSummary<double> convex_hull(const std::vector<Vec<double>>&, double);
extern template class IncrementalHull<Rational>;
extern template class IncrementalHull<double>;

}  // namespace torimass
