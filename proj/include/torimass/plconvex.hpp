#pragma once

// Piecewise-linear convex functions f(x) = max_i <a_i, x> + b_i on R^n and
// their Monge-Ampere data: Newton polytopes, Alexandrov atoms, Legendre
// values and singularity comparison by Newton-polytope containment.

#include <optional>
#include <string>
#include <vector>

#include "torimass/polytope.hpp"
#include "torimass/scalar.hpp"

namespace torimass {

template <class S>
struct AffinePiece {
  Vec<S> slope;
  S offset = 0;

  S operator()(const Vec<S>& x) const { return dot(slope, x) + offset; }
  friend bool operator==(const AffinePiece& a, const AffinePiece& b) {
    return a.slope == b.slope && a.offset == b.offset;
  }
};

template <class S>
class PLConvexFunction {
 public:
  // Throws InvalidInput for an empty piece list or non-finite entries and
  // DimensionMismatch for slopes of the wrong length.
  PLConvexFunction(std::size_t dim, std::vector<AffinePiece<S>> pieces);

  std::size_t dim() const { return dim_; }
  const std::vector<AffinePiece<S>>& pieces() const { return pieces_; }

  S operator()(const Vec<S>& x) const;

 private:
  std::size_t dim_;
  std::vector<AffinePiece<S>> pieces_;
};

template <class S>
struct Atom {
  Vec<S> location;
  S mass = 0;
};

template <class S>
struct AtomicMeasure {
  std::vector<Atom<S>> atoms;

  bool empty() const { return atoms.empty(); }
  S total() const {
    S acc = 0;
    for (const auto& a : atoms) acc += a.mass;
    return acc;
  }
};

enum class SingularityOrder { kLessSingular, kMoreSingular, kEquivalent, kIncomparable };

std::string to_string(SingularityOrder order);
SingularityOrder swapped(SingularityOrder order);

enum class RestrictMode { kStrictBelow, kBelowOrEqual };

template <class S>
S eval(const PLConvexFunction<S>& f, const Vec<S>& x);

// Keeps exactly the pieces that uniquely attain the max on an open set.
template <class S>
PLConvexFunction<S> prune(const PLConvexFunction<S>& f);

// (1-t)u + tv with t in [0, 1], pruned.
template <class S>
PLConvexFunction<S> combine(const S& t, const PLConvexFunction<S>& u, const PLConvexFunction<S>& v);

template <class S>
PLConvexFunction<S> max_of(const PLConvexFunction<S>& f, const PLConvexFunction<S>& g);

template <class S>
PLConvexFunction<S> shift(const PLConvexFunction<S>& f, const S& c);

template <class S>
Polytope<S> newton_polytope(const PLConvexFunction<S>& f);

template <class S>
S total_mass(const PLConvexFunction<S>& f);

// Alexandrov measure: one atom per vertex of the linearity-domain
// subdivision, weighted by the volume of the hull of the active slopes.
template <class S>
AtomicMeasure<S> ma_measure(const PLConvexFunction<S>& f);

template <class S>
SingularityOrder compare_singularity(const PLConvexFunction<S>& f, const PLConvexFunction<S>& g);

// Atoms of mu located in {f < g} (kStrictBelow) or {f <= g} (kBelowOrEqual).
template <class S>
AtomicMeasure<S> restrict_measure(const AtomicMeasure<S>& mu, const PLConvexFunction<S>& f,
                                  const PLConvexFunction<S>& g, RestrictMode mode = RestrictMode::kStrictBelow);

// f*(s) = sup_x <s,x> - f(x); nullopt stands for +infinity (s outside the
// Newton polytope).
template <class S>
std::optional<S> legendre_value(const PLConvexFunction<S>& f, const Vec<S>& s);

// Axis-aligned box lo <= x <= hi.
template <class S>
struct Box {
  Vec<S> lo;
  Vec<S> hi;
};

// sup of f - g over R^n (nullopt when unbounded) or over a box.
template <class S>
std::optional<S> sup_difference(const PLConvexFunction<S>& f, const PLConvexFunction<S>& g,
                                const std::optional<Box<S>>& box = std::nullopt);

// A point where piece i beats every other piece by min(1, best margin);
// nullopt if piece i is not essential.
template <class S>
std::optional<Vec<S>> piece_witness(const PLConvexFunction<S>& f, std::size_t i);

// Index of the unique maximizing piece at x, nullopt at a kink. The float
// profile treats gaps below tol * max(1, |f(x)|) as ties.
template <class S>
std::optional<std::size_t> unique_active_piece(const PLConvexFunction<S>& f, const Vec<S>& x,
                                               double tol = kStrictTolerance);

template <class To, class From>
PLConvexFunction<To> convert_function(const PLConvexFunction<From>& f) {
  std::vector<AffinePiece<To>> pieces;
  for (const auto& p : f.pieces()) pieces.push_back({convert_vec<To>(p.slope), convert_scalar<To>(p.offset)});
  return PLConvexFunction<To>(f.dim(), std::move(pieces));
}

#define TORIMASS_PLCONVEX_EXTERN(S)                                                                      \
  extern template class PLConvexFunction<S>;                                                             \
  extern template S eval(const PLConvexFunction<S>&, const Vec<S>&);                                     \
  extern template PLConvexFunction<S> prune(const PLConvexFunction<S>&);                                 \
  extern template PLConvexFunction<S> combine(const S&, const PLConvexFunction<S>&,                      \
                                              const PLConvexFunction<S>&);                               \
  extern template PLConvexFunction<S> max_of(const PLConvexFunction<S>&, const PLConvexFunction<S>&);    \
  extern template PLConvexFunction<S> shift(const PLConvexFunction<S>&, const S&);                       \
  extern template Polytope<S> newton_polytope(const PLConvexFunction<S>&);                               \
  extern template S total_mass(const PLConvexFunction<S>&);                                              \
  extern template AtomicMeasure<S> ma_measure(const PLConvexFunction<S>&);                               \
  extern template SingularityOrder compare_singularity(const PLConvexFunction<S>&,                       \
                                                       const PLConvexFunction<S>&);                      \
  extern template AtomicMeasure<S> restrict_measure(const AtomicMeasure<S>&, const PLConvexFunction<S>&, \
                                                    const PLConvexFunction<S>&, RestrictMode);           \
  extern template std::optional<S> legendre_value(const PLConvexFunction<S>&, const Vec<S>&);            \
  extern template std::optional<S> sup_difference(const PLConvexFunction<S>&, const PLConvexFunction<S>&, \
                                                  const std::optional<Box<S>>&);                         \
  extern template std::optional<Vec<S>> piece_witness(const PLConvexFunction<S>&, std::size_t);          \
  extern template std::optional<std::size_t> unique_active_piece(const PLConvexFunction<S>&,              \
                                                                 const Vec<S>&, double);

TORIMASS_PLCONVEX_EXTERN(Rational)
TORIMASS_PLCONVEX_EXTERN(double)
#undef TORIMASS_PLCONVEX_EXTERN

}  // namespace torimass
