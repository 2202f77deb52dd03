#include "torimass/plconvex.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "torimass/linalg.hpp"
#include "torimass/lp.hpp"

namespace torimass {

std::string to_string(SingularityOrder order) {
  switch (order) {
    case SingularityOrder::kLessSingular: return "less-singular";
    case SingularityOrder::kMoreSingular: return "more-singular";
    case SingularityOrder::kEquivalent: return "equivalent";
    case SingularityOrder::kIncomparable: return "incomparable";
  }
  return "incomparable";
}

SingularityOrder swapped(SingularityOrder order) {
  switch (order) {
    case SingularityOrder::kLessSingular: return SingularityOrder::kMoreSingular;
    case SingularityOrder::kMoreSingular: return SingularityOrder::kLessSingular;
    default: return order;
  }
}

template <class S>
PLConvexFunction<S>::PLConvexFunction(std::size_t dim, std::vector<AffinePiece<S>> pieces)
    : dim_(dim), pieces_(std::move(pieces)) {
  if (dim_ == 0) throw InvalidInput("function dimension must be >= 1");
  if (pieces_.empty()) throw InvalidInput("function needs at least one affine piece");
  for (const auto& p : pieces_) {
    if (p.slope.size() != dim_) throw DimensionMismatch("affine piece slope has wrong dimension");
    if constexpr (!Arith<S>::kExact) {
      if (!std::isfinite(p.offset)) throw InvalidInput("non-finite offset");
      for (double a : p.slope)
        if (!std::isfinite(a)) throw InvalidInput("non-finite slope");
    }
  }
}

template <class S>
S PLConvexFunction<S>::operator()(const Vec<S>& x) const {
  if (x.size() != dim_) throw DimensionMismatch("eval: point dimension mismatch");
  S best = pieces_.front()(x);
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    S v = pieces_[i](x);
    if (v > best) best = v;
  }
  return best;
}

template <class S>
S eval(const PLConvexFunction<S>& f, const Vec<S>& x) {
  return f(x);
}

namespace {

template <class S>
void require_same_dim(const PLConvexFunction<S>& f, const PLConvexFunction<S>& g, const char* what) {
  if (f.dim() != g.dim()) throw DimensionMismatch(std::string(what) + ": dimension mismatch");
}

// Equal slopes collapse to the piece with the largest offset.
template <class S>
std::vector<AffinePiece<S>> dedupe_slopes(const std::vector<AffinePiece<S>>& pieces) {
  std::map<Vec<S>, S> best;
  std::vector<Vec<S>> order;
  for (const auto& p : pieces) {
    auto [it, inserted] = best.emplace(p.slope, p.offset);
    if (inserted) order.push_back(p.slope);
    else if (p.offset > it->second) it->second = p.offset;
  }
  std::vector<AffinePiece<S>> out;
  out.reserve(order.size());
  for (auto& s : order) out.push_back({s, best[s]});
  return out;
}

// Optimal margin t* = min(1, max_x min_{j != i} (piece_i - piece_j)(x)),
// computed through the dual program
//   min sum_j lambda_j (b_i - b_j) + mu
//   s.t. sum_j lambda_j (a_j - a_i) = 0, sum_j lambda_j + mu = 1, lambda, mu >= 0.
template <class S>
S essential_margin(const std::vector<AffinePiece<S>>& pieces, std::size_t i) {
  const std::size_t n = pieces[i].slope.size();
  const std::size_t m = pieces.size();
  DenseMatrix<S> a(n + 1, m);
  Vec<S> b(n + 1, S(0));
  Vec<S> c(m, S(0));
  std::size_t col = 0;
  for (std::size_t j = 0; j < m; ++j) {
    if (j == i) continue;
    for (std::size_t r = 0; r < n; ++r) a(r, col) = pieces[j].slope[r] - pieces[i].slope[r];
    a(n, col) = 1;
    c[col] = pieces[i].offset - pieces[j].offset;
    ++col;
  }
  a(n, col) = 1;  // mu
  c[col] = 1;
  b[n] = 1;
  LpResult<S> r = solve_standard_lp(a, b, c);
  if (r.status != LpStatus::kOptimal) throw InternalError("prune: margin program did not solve");
  return r.objective;
}

// maximize s subject to s <= g_k . x + h_k for every row, optionally s <= cap
// and x within a box. Returns (value, argmax) or nullopt when unbounded.
template <class S>
std::optional<std::pair<S, Vec<S>>> maximize_min_affine(const std::vector<AffinePiece<S>>& rows,
                                                        const std::optional<S>& cap,
                                                        const std::optional<Box<S>>& box) {
  const std::size_t n = rows.front().slope.size();
  const std::size_t k = rows.size();
  const bool boxed = box.has_value();
  const std::size_t x_vars = boxed ? n : 2 * n;
  const std::size_t cap_rows = cap ? 1 : 0;
  const std::size_t box_rows = boxed ? n : 0;
  const std::size_t nrows = k + cap_rows + box_rows;
  const std::size_t sp = x_vars, sm = x_vars + 1, slack0 = x_vars + 2;
  const std::size_t nvars = slack0 + nrows;
  DenseMatrix<S> a(nrows, nvars);
  Vec<S> b(nrows, S(0));
  for (std::size_t r = 0; r < k; ++r) {
    a(r, sp) = 1;
    a(r, sm) = -1;
    S rhs = rows[r].offset;
    for (std::size_t i = 0; i < n; ++i) {
      const S& g = rows[r].slope[i];
      if (boxed) {
        a(r, i) = -g;
        rhs += g * box->lo[i];
      } else {
        a(r, i) = -g;
        a(r, n + i) = g;
      }
    }
    a(r, slack0 + r) = 1;
    b[r] = rhs;
  }
  if (cap) {
    a(k, sp) = 1;
    a(k, sm) = -1;
    a(k, slack0 + k) = 1;
    b[k] = *cap;
  }
  if (boxed) {
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t r = k + cap_rows + i;
      a(r, i) = 1;
      a(r, slack0 + r) = 1;
      b[r] = box->hi[i] - box->lo[i];
    }
  }
  Vec<S> c(nvars, S(0));
  c[sp] = -1;
  c[sm] = 1;
  LpResult<S> res = solve_standard_lp(a, b, c);
  if (res.status == LpStatus::kUnbounded) return std::nullopt;
  if (res.status != LpStatus::kOptimal) throw InternalError("max-min program infeasible");
  Vec<S> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = boxed ? S(box->lo[i] + res.x[i]) : S(res.x[i] - res.x[n + i]);
  return std::make_pair(S(-res.objective), std::move(x));
}

template <class S>
bool positive_tol(const S& v) {
  return Arith<S>::sign(v, kTieTolerance) > 0;
}

}  // namespace

template <class S>
PLConvexFunction<S> prune(const PLConvexFunction<S>& f) {
  std::vector<AffinePiece<S>> pieces = dedupe_slopes(f.pieces());
  if (pieces.size() == 1) return PLConvexFunction<S>(f.dim(), std::move(pieces));
  std::vector<AffinePiece<S>> kept;
  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (positive_tol(essential_margin(pieces, i))) kept.push_back(pieces[i]);
  if (kept.empty()) throw InternalError("prune removed every piece");
  return PLConvexFunction<S>(f.dim(), std::move(kept));
}

template <class S>
PLConvexFunction<S> combine(const S& t, const PLConvexFunction<S>& u, const PLConvexFunction<S>& v) {
  require_same_dim(u, v, "combine");
  if (t < S(0) || t > S(1)) throw InvalidInput("combine: t outside [0,1]");
  const S s = S(1) - t;
  std::vector<AffinePiece<S>> pieces;
  pieces.reserve(u.pieces().size() * v.pieces().size());
  for (const auto& p : u.pieces()) {
    for (const auto& q : v.pieces()) {
      AffinePiece<S> r;
      r.slope.resize(u.dim());
      for (std::size_t i = 0; i < u.dim(); ++i) r.slope[i] = s * p.slope[i] + t * q.slope[i];
      r.offset = s * p.offset + t * q.offset;
      pieces.push_back(std::move(r));
    }
  }
  return prune(PLConvexFunction<S>(u.dim(), std::move(pieces)));
}

template <class S>
PLConvexFunction<S> max_of(const PLConvexFunction<S>& f, const PLConvexFunction<S>& g) {
  require_same_dim(f, g, "max_of");
  std::vector<AffinePiece<S>> pieces = f.pieces();
  pieces.insert(pieces.end(), g.pieces().begin(), g.pieces().end());
  return prune(PLConvexFunction<S>(f.dim(), std::move(pieces)));
}

template <class S>
PLConvexFunction<S> shift(const PLConvexFunction<S>& f, const S& c) {
  std::vector<AffinePiece<S>> pieces = f.pieces();
  for (auto& p : pieces) p.offset += c;
  return PLConvexFunction<S>(f.dim(), std::move(pieces));
}

template <class S>
Polytope<S> newton_polytope(const PLConvexFunction<S>& f) {
  // Every vertex of the slope hull belongs to an essential piece, so the hull
  // of all slopes equals the hull of the essential ones.
  std::vector<Vec<S>> slopes;
  slopes.reserve(f.pieces().size());
  for (const auto& p : f.pieces()) slopes.push_back(p.slope);
  return Polytope<S>::hull_of(slopes);
}

template <class S>
S total_mass(const PLConvexFunction<S>& f) {
  return newton_polytope(f).volume();
}

template <class S>
AtomicMeasure<S> ma_measure(const PLConvexFunction<S>& f_in) {
  const PLConvexFunction<S> f = prune(f_in);
  const auto& pieces = f.pieces();
  const std::size_t n = f.dim();
  const std::size_t m = pieces.size();
  AtomicMeasure<S> out;
  if (m < n + 1) return out;

  struct Vertex {
    Vec<S> x;
    S value;
    std::vector<std::size_t> active;  // ascending
  };
  std::vector<Vertex> found;

  auto tie_tol = [&](const S& value) {
    return kTieTolerance * std::max(1.0, std::fabs(Arith<S>::to_double(value)));
  };
  auto covered = [&](const std::vector<std::size_t>& subset) {
    for (const auto& v : found)
      if (std::includes(v.active.begin(), v.active.end(), subset.begin(), subset.end())) return true;
    return false;
  };

  // (n+1)-subsets in lexicographic order.
  std::vector<std::size_t> idx(n + 1);
  for (std::size_t i = 0; i <= n; ++i) idx[i] = i;
  for (;;) {
    if (!covered(idx)) {
      DenseMatrix<S> a(n, n);
      Vec<S> rhs(n);
      const auto& p0 = pieces[idx[0]];
      for (std::size_t r = 0; r < n; ++r) {
        const auto& pr = pieces[idx[r + 1]];
        for (std::size_t c = 0; c < n; ++c) a(r, c) = pr.slope[c] - p0.slope[c];
        rhs[r] = p0.offset - pr.offset;
      }
      if (auto x = solve(std::move(a), std::move(rhs))) {
        const S value = p0(*x);
        const double tol = tie_tol(value);
        bool feasible = true;
        std::vector<std::size_t> active;
        for (std::size_t j = 0; j < m && feasible; ++j) {
          const int sgn = Arith<S>::sign(S(pieces[j](*x) - value), tol);
          if (sgn > 0) feasible = false;
          else if (sgn == 0) active.push_back(j);
        }
        if (feasible) found.push_back({std::move(*x), value, std::move(active)});
      }
    }
    // advance the combination
    std::size_t pos = n + 1;
    while (pos > 0 && idx[pos - 1] == m - (n + 1) + (pos - 1)) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j <= n; ++j) idx[j] = idx[j - 1] + 1;
  }

  for (const auto& v : found) {
    std::vector<Vec<S>> slopes;
    for (std::size_t j : v.active) slopes.push_back(pieces[j].slope);
    S mass = Polytope<S>::hull_of(slopes).volume();
    if (!positive_tol(mass)) {
      throw InternalError("ma_measure: subdivision vertex with a degenerate dual cell");
    }
    out.atoms.push_back({v.x, mass});
  }
  std::sort(out.atoms.begin(), out.atoms.end(),
            [](const Atom<S>& a, const Atom<S>& b) { return a.location < b.location; });
  return out;
}

template <class S>
SingularityOrder compare_singularity(const PLConvexFunction<S>& f, const PLConvexFunction<S>& g) {
  require_same_dim(f, g, "compare_singularity");
  const Polytope<S> pf = newton_polytope(f);
  const Polytope<S> pg = newton_polytope(g);
  const bool g_in_f = contains(pf, pg);
  const bool f_in_g = contains(pg, pf);
  if (g_in_f && f_in_g) return SingularityOrder::kEquivalent;
  if (g_in_f) return SingularityOrder::kLessSingular;
  if (f_in_g) return SingularityOrder::kMoreSingular;
  return SingularityOrder::kIncomparable;
}

template <class S>
AtomicMeasure<S> restrict_measure(const AtomicMeasure<S>& mu, const PLConvexFunction<S>& f,
                                  const PLConvexFunction<S>& g, RestrictMode mode) {
  require_same_dim(f, g, "restrict_measure");
  AtomicMeasure<S> out;
  for (const auto& atom : mu.atoms) {
    const S gap = g(atom.location) - f(atom.location);  // > 0 means f < g
    const int sgn = Arith<S>::sign(gap, kStrictTolerance);
    const bool keep = mode == RestrictMode::kStrictBelow ? sgn > 0 : sgn >= 0;
    if (keep) out.atoms.push_back(atom);
  }
  return out;
}

template <class S>
std::optional<S> legendre_value(const PLConvexFunction<S>& f, const Vec<S>& s) {
  if (s.size() != f.dim()) throw DimensionMismatch("legendre_value: dimension mismatch");
  // f*(s) = min { -sum lambda_i b_i : sum lambda_i a_i = s, sum lambda_i = 1, lambda >= 0 }
  const std::size_t n = f.dim();
  const std::size_t m = f.pieces().size();
  DenseMatrix<S> a(n + 1, m);
  Vec<S> b(n + 1, S(0));
  Vec<S> c(m);
  for (std::size_t j = 0; j < m; ++j) {
    for (std::size_t r = 0; r < n; ++r) a(r, j) = f.pieces()[j].slope[r];
    a(n, j) = 1;
    c[j] = -f.pieces()[j].offset;
  }
  for (std::size_t r = 0; r < n; ++r) b[r] = s[r];
  b[n] = 1;
  LpResult<S> r = solve_standard_lp(a, b, c, Arith<S>::kExact ? 0.0 : kTieTolerance);
  if (r.status == LpStatus::kInfeasible) return std::nullopt;
  if (r.status != LpStatus::kOptimal) throw InternalError("legendre_value: unbounded program");
  return r.objective;
}

template <class S>
std::optional<S> sup_difference(const PLConvexFunction<S>& f, const PLConvexFunction<S>& g,
                                const std::optional<Box<S>>& box) {
  require_same_dim(f, g, "sup_difference");
  // sup (f - g) = max_i sup_x min_j (f_i - g_j)(x)
  std::optional<S> best;
  for (const auto& fi : f.pieces()) {
    std::vector<AffinePiece<S>> rows;
    for (const auto& gj : g.pieces()) {
      AffinePiece<S> r;
      r.slope.resize(f.dim());
      for (std::size_t k = 0; k < f.dim(); ++k) r.slope[k] = fi.slope[k] - gj.slope[k];
      r.offset = fi.offset - gj.offset;
      rows.push_back(std::move(r));
    }
    auto res = maximize_min_affine<S>(rows, std::nullopt, box);
    if (!res) return std::nullopt;
    if (!best || res->first > *best) best = res->first;
  }
  return best;
}

template <class S>
std::optional<Vec<S>> piece_witness(const PLConvexFunction<S>& f, std::size_t i) {
  const auto& pieces = f.pieces();
  if (i >= pieces.size()) throw InvalidInput("piece_witness: index out of range");
  std::vector<AffinePiece<S>> rows;
  for (std::size_t j = 0; j < pieces.size(); ++j) {
    if (j == i) continue;
    AffinePiece<S> r;
    r.slope.resize(f.dim());
    for (std::size_t k = 0; k < f.dim(); ++k) r.slope[k] = pieces[i].slope[k] - pieces[j].slope[k];
    r.offset = pieces[i].offset - pieces[j].offset;
    rows.push_back(std::move(r));
  }
  if (rows.empty()) return Vec<S>(f.dim(), S(0));
  auto res = maximize_min_affine<S>(rows, S(1), std::nullopt);
  if (!res || !positive_tol(res->first)) return std::nullopt;
  return res->second;
}

template <class S>
std::optional<std::size_t> unique_active_piece(const PLConvexFunction<S>& f, const Vec<S>& x, double tol) {
  const auto& pieces = f.pieces();
  std::size_t best = 0;
  S best_val = pieces[0](x);
  std::optional<S> second;
  for (std::size_t i = 1; i < pieces.size(); ++i) {
    S v = pieces[i](x);
    if (v > best_val) {
      second = best_val;
      best_val = v;
      best = i;
    } else if (!second || v > *second) {
      second = v;
    }
  }
  if (!second) return best;
  const double scale = std::max(1.0, std::fabs(Arith<S>::to_double(best_val)));
  if (Arith<S>::sign(S(best_val - *second), tol * scale) <= 0) return std::nullopt;
  return best;
}

#define TORIMASS_PLCONVEX_INSTANTIATE(S)                                                            \
  template class PLConvexFunction<S>;                                                               \
  template S eval(const PLConvexFunction<S>&, const Vec<S>&);                                       \
  template PLConvexFunction<S> prune(const PLConvexFunction<S>&);                                   \
  template PLConvexFunction<S> combine(const S&, const PLConvexFunction<S>&, const PLConvexFunction<S>&); \
  template PLConvexFunction<S> max_of(const PLConvexFunction<S>&, const PLConvexFunction<S>&);      \
  template PLConvexFunction<S> shift(const PLConvexFunction<S>&, const S&);                         \
  template Polytope<S> newton_polytope(const PLConvexFunction<S>&);                                 \
  template S total_mass(const PLConvexFunction<S>&);                                                \
  template AtomicMeasure<S> ma_measure(const PLConvexFunction<S>&);                                 \
  template SingularityOrder compare_singularity(const PLConvexFunction<S>&, const PLConvexFunction<S>&); \
  template AtomicMeasure<S> restrict_measure(const AtomicMeasure<S>&, const PLConvexFunction<S>&,   \
                                             const PLConvexFunction<S>&, RestrictMode);             \
  template std::optional<S> legendre_value(const PLConvexFunction<S>&, const Vec<S>&);              \
  template std::optional<S> sup_difference(const PLConvexFunction<S>&, const PLConvexFunction<S>&,  \
                                           const std::optional<Box<S>>&);                           \
  template std::optional<Vec<S>> piece_witness(const PLConvexFunction<S>&, std::size_t);            \
  template std::optional<std::size_t> unique_active_piece(const PLConvexFunction<S>&, const Vec<S>&, double);

TORIMASS_PLCONVEX_INSTANTIATE(Rational)
TORIMASS_PLCONVEX_INSTANTIATE(double)

}  // namespace torimass
