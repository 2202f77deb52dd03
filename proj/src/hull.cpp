#include "torimass/hull.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "torimass/linalg.hpp"

namespace torimass {

namespace {

template <class S>
double max_abs_coord(const std::vector<Vec<S>>& pts) {
  double scale = 0.0;
  for (const auto& p : pts)
    for (const auto& x : p) scale = std::max(scale, std::fabs(Arith<S>::to_double(x)));
  return scale;
}

template <class S>
Vec<S> residual(const Vec<S>& p, const Vec<S>& origin, const std::vector<Vec<S>>& ortho) {
  Vec<S> r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] - origin[i];
  for (const auto& w : ortho) {
    S coef = dot(r, w) / dot(w, w);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= coef * w[i];
  }
  return r;
}

// Greedy affinely independent subset: start from the lexicographically
// smallest point and repeatedly take the point farthest from the current span.
template <class S>
std::vector<std::size_t> affine_basis(const std::vector<Vec<S>>& pts, double abs_tol) {
  const std::size_t d = pts.front().size();
  std::size_t first = 0;
  for (std::size_t i = 1; i < pts.size(); ++i)
    if (pts[i] < pts[first]) first = i;
  std::vector<std::size_t> chosen{first};
  std::vector<Vec<S>> ortho;
  while (chosen.size() <= d) {
    std::size_t best = pts.size();
    S best_norm = 0;
    Vec<S> best_res;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      Vec<S> r = residual(pts[i], pts[first], ortho);
      S n2 = dot(r, r);
      if (n2 > best_norm) {
        best_norm = n2;
        best = i;
        best_res = std::move(r);
      }
    }
    if (best == pts.size()) break;
    if constexpr (!Arith<S>::kExact) {
      if (std::sqrt(best_norm) <= abs_tol) break;
    }
    chosen.push_back(best);
    ortho.push_back(std::move(best_res));
  }
  return chosen;
}

}  // namespace

template <class S>
IncrementalHull<S>::IncrementalHull(std::size_t dim, double tol) : dim_(dim), tol_(tol) {
  if (dim_ < 2) throw InvalidInput("IncrementalHull requires dimension >= 2");
}

template <class S>
std::size_t IncrementalHull<S>::facet_count() const {
  return static_cast<std::size_t>(
      std::count_if(facets_.begin(), facets_.end(), [](const Facet& f) { return f.alive; }));
}

template <class S>
void IncrementalHull<S>::update_scale(const std::vector<Vec<S>>& batch) {
  if constexpr (!Arith<S>::kExact) {
    scale_ = std::max(scale_, max_abs_coord(batch));
    abs_tol_ = tol_ * std::max(1.0, scale_);
  }
}

template <class S>
bool IncrementalHull<S>::above(const Facet& f, const Vec<S>& p) const {
  S dist = distance(f, p);
  if constexpr (Arith<S>::kExact) return dist > 0;
  else return dist > abs_tol_;
}

template <class S>
void IncrementalHull<S>::add(const std::vector<Vec<S>>& batch) {
  for (const auto& p : batch)
    if (p.size() != dim_) throw DimensionMismatch("hull: point dimension mismatch");
  update_scale(batch);
  const std::size_t first_new = points_.size();
  points_.insert(points_.end(), batch.begin(), batch.end());
  if (!built_) {
    if (try_build()) process();
    return;
  }
  std::vector<std::size_t> live;
  for (std::size_t f = 0; f < facets_.size(); ++f)
    if (facets_[f].alive) live.push_back(f);
  for (std::size_t i = first_new; i < points_.size(); ++i) assign(i, live);
  for (std::size_t f : live)
    if (!facets_[f].outside.empty()) worklist_.push_back(f);
  process();
}

template <class S>
bool IncrementalHull<S>::try_build() {
  std::vector<std::size_t> simplex = affine_basis(points_, abs_tol_);
  if (simplex.size() < dim_ + 1) return false;
  built_ = true;
  interior_.assign(dim_, S(0));
  for (std::size_t v : simplex)
    for (std::size_t i = 0; i < dim_; ++i) interior_[i] += points_[v][i];
  for (auto& x : interior_) x /= S(static_cast<long>(dim_ + 1));

  // Facet k omits simplex[k]; its neighbor across the ridge opposite vertex
  // simplex[j] is facet j.
  std::vector<std::size_t> ids;
  for (std::size_t k = 0; k <= dim_; ++k) {
    std::vector<std::size_t> verts;
    for (std::size_t j = 0; j <= dim_; ++j)
      if (j != k) verts.push_back(simplex[j]);
    ids.push_back(make_facet(std::move(verts)));
  }
  for (std::size_t k = 0; k <= dim_; ++k) {
    Facet& f = facets_[ids[k]];
    for (std::size_t s = 0; s < dim_; ++s) {
      std::size_t omitted = std::find(simplex.begin(), simplex.end(), f.verts[s]) - simplex.begin();
      f.nbr[s] = ids[omitted];
    }
  }
  std::vector<bool> in_simplex(points_.size(), false);
  for (std::size_t v : simplex) in_simplex[v] = true;
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (!in_simplex[i]) assign(i, ids);
  for (std::size_t f : ids)
    if (!facets_[f].outside.empty()) worklist_.push_back(f);
  return true;
}

template <class S>
std::size_t IncrementalHull<S>::make_facet(std::vector<std::size_t> verts) {
  Facet f;
  std::vector<const Vec<S>*> ptrs;
  for (std::size_t v : verts) ptrs.push_back(&points_[v]);
  f.normal = hyperplane_normal(ptrs);
  if constexpr (!Arith<S>::kExact) {
    double norm = std::sqrt(dot(f.normal, f.normal));
    if (norm == 0.0) throw InternalError("hull: degenerate facet");
    for (auto& x : f.normal) x /= norm;
  }
  f.offset = dot(f.normal, points_[verts[0]]);
  if (dot(f.normal, interior_) - f.offset > S(0)) {
    for (auto& x : f.normal) x = -x;
    f.offset = -f.offset;
  }
  f.verts = std::move(verts);
  f.nbr.assign(dim_, facets_.size());
  facets_.push_back(std::move(f));
  return facets_.size() - 1;
}

template <class S>
void IncrementalHull<S>::assign(std::size_t point, const std::vector<std::size_t>& candidates) {
  for (std::size_t f : candidates) {
    if (facets_[f].alive && above(facets_[f], points_[point])) {
      facets_[f].outside.push_back(point);
      return;
    }
  }
}

template <class S>
void IncrementalHull<S>::process() {
  while (!worklist_.empty()) {
    std::size_t f = worklist_.back();
    worklist_.pop_back();
    if (!facets_[f].alive || facets_[f].outside.empty()) continue;
    const Facet& facet = facets_[f];
    std::size_t far = facet.outside.front();
    S far_dist = distance(facet, points_[far]);
    for (std::size_t q : facet.outside) {
      S dq = distance(facet, points_[q]);
      if (dq > far_dist) {
        far = q;
        far_dist = dq;
      }
    }
    insert(f, far);
  }
}

template <class S>
void IncrementalHull<S>::insert(std::size_t start, std::size_t point) {
  const Vec<S>& p = points_[point];
  // 0 unknown, 1 visible, 2 hidden
  std::vector<char> state(facets_.size(), 0);
  std::vector<std::size_t> visible{start};
  state[start] = 1;
  for (std::size_t head = 0; head < visible.size(); ++head) {
    for (std::size_t nb : facets_[visible[head]].nbr) {
      if (state[nb] != 0) continue;
      if (above(facets_[nb], p)) {
        state[nb] = 1;
        visible.push_back(nb);
      } else {
        state[nb] = 2;
      }
    }
  }

  std::vector<std::size_t> created;
  std::map<std::vector<std::size_t>, std::pair<std::size_t, std::size_t>> open_ridges;
  for (std::size_t fv : visible) {
    for (std::size_t slot = 0; slot < dim_; ++slot) {
      const std::size_t nb = facets_[fv].nbr[slot];
      if (state[nb] == 1) continue;
      std::vector<std::size_t> verts;
      for (std::size_t s = 0; s < dim_; ++s)
        if (s != slot) verts.push_back(facets_[fv].verts[s]);
      verts.push_back(point);
      const std::size_t nf = make_facet(verts);
      created.push_back(nf);
      facets_[nf].nbr[dim_ - 1] = nb;
      auto& back = facets_[nb].nbr;
      auto it = std::find(back.begin(), back.end(), fv);
      if (it == back.end()) throw InternalError("hull: broken adjacency");
      *it = nf;
      for (std::size_t j = 0; j + 1 < dim_; ++j) {
        std::vector<std::size_t> key;
        for (std::size_t s = 0; s < dim_; ++s)
          if (s != j) key.push_back(facets_[nf].verts[s]);
        std::sort(key.begin(), key.end());
        auto found = open_ridges.find(key);
        if (found == open_ridges.end()) {
          open_ridges.emplace(std::move(key), std::make_pair(nf, j));
        } else {
          auto [other, other_slot] = found->second;
          facets_[nf].nbr[j] = other;
          facets_[other].nbr[other_slot] = nf;
          open_ridges.erase(found);
        }
      }
    }
  }
  if (!open_ridges.empty()) throw InternalError("hull: horizon is not a closed ridge cycle");

  std::vector<std::size_t> orphans;
  for (std::size_t fv : visible) {
    Facet& f = facets_[fv];
    f.alive = false;
    for (std::size_t q : f.outside)
      if (q != point) orphans.push_back(q);
    f.outside.clear();
    f.outside.shrink_to_fit();
  }
  for (std::size_t q : orphans) assign(q, created);
  for (std::size_t nf : created)
    if (!facets_[nf].outside.empty()) worklist_.push_back(nf);
}

template <class S>
S IncrementalHull<S>::volume() const {
  if (!built_) return S(0);
  S total = 0;
  for (const Facet& f : facets_) {
    if (!f.alive) continue;
    DenseMatrix<S> m(dim_, dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) m(r, c) = points_[f.verts[r]][c] - interior_[c];
    total += Arith<S>::abs(determinant(std::move(m)));
  }
  return total / S(Arith<S>::from_rational(factorial(static_cast<unsigned>(dim_))));
}

template <class S>
std::vector<std::size_t> IncrementalHull<S>::extreme_indices() const {
  if (!built_) throw InternalError("hull: extreme_indices on a lower-dimensional hull");
  std::map<std::size_t, std::vector<std::size_t>> incident;
  for (std::size_t f = 0; f < facets_.size(); ++f) {
    if (!facets_[f].alive) continue;
    for (std::size_t v : facets_[f].verts) incident[v].push_back(f);
  }
  std::vector<std::size_t> out;
  for (const auto& [v, fs] : incident) {
    // A boundary point is a vertex iff its incident facet normals span R^d.
    DenseMatrix<S> normals(fs.size(), dim_);
    for (std::size_t r = 0; r < fs.size(); ++r)
      for (std::size_t c = 0; c < dim_; ++c) normals(r, c) = facets_[fs[r]].normal[c];
    if (rank(std::move(normals), tol_) == dim_) out.push_back(v);
  }
  return out;
}

template <class S>
HullSummary<S> convex_hull(const std::vector<Vec<S>>& points, double tol) {
  if (points.empty()) throw InvalidInput("convex hull of an empty point set");
  const std::size_t d = points.front().size();
  if (d == 0) throw InvalidInput("points must have dimension >= 1");
  for (const auto& p : points)
    if (p.size() != d) throw DimensionMismatch("convex hull: inconsistent point dimensions");
  const double abs_tol = Arith<S>::kExact ? 0.0 : tol * std::max(1.0, max_abs_coord(points));

  HullSummary<S> out;
  if (d == 1) {
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
      if (points[i][0] < points[lo][0]) lo = i;
      if (points[i][0] > points[hi][0]) hi = i;
    }
    S len = points[hi][0] - points[lo][0];
    if (Arith<S>::sign(len, abs_tol) == 0) {
      out.affine_dim = 0;
      out.extreme = {lo};
    } else {
      out.affine_dim = 1;
      out.extreme = {std::min(lo, hi), std::max(lo, hi)};
      out.volume = len;
    }
    return out;
  }

  std::vector<std::size_t> basis = affine_basis(points, abs_tol);
  const std::size_t k = basis.size() - 1;
  if (k == d) {
    IncrementalHull<S> hull(d, tol);
    hull.add(points);
    out.affine_dim = d;
    out.extreme = hull.extreme_indices();
    out.volume = hull.volume();
    return out;
  }
  out.affine_dim = k;
  if (k == 0) {
    out.extreme = {basis.front()};
    return out;
  }
  // Chart: coordinates at the pivot columns of the direction space are an
  // affine bijection from the affine hull onto R^k.
  DenseMatrix<S> dirs(k, d);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < d; ++c) dirs(r, c) = points[basis[r + 1]][c] - points[basis[0]][c];
  std::vector<std::size_t> pivots = row_echelon(dirs, tol);
  if (pivots.size() != k) throw InternalError("hull: chart rank mismatch");
  std::vector<Vec<S>> projected;
  projected.reserve(points.size());
  for (const auto& p : points) {
    Vec<S> q;
    for (std::size_t c : pivots) q.push_back(p[c]);
    projected.push_back(std::move(q));
  }
  HullSummary<S> sub = convex_hull(projected, tol);
  out.extreme = std::move(sub.extreme);
  return out;
}

template HullSummary<Rational> convex_hull(const std::vector<Vec<Rational>>&, double);
template HullSummary<double> convex_hull(const std::vector<Vec<double>>&, double);
template class IncrementalHull<Rational>;
template class IncrementalHull<double>;

}  // namespace torimass
