#pragma once

// The envelope G(p, y) = sup_{x in Sigma_N} (1-|x|)u(p) + |x|v(p) + <x,y> - |x|_2^2
// on R^n x R^N, its closed form through Euclidean projection onto the
// simplex, gradients, and a Monte-Carlo estimate of the volume of the
// gradient image.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "torimass/plconvex.hpp"
#include "torimass/scalar.hpp"

namespace torimass {

// Sigma_N = {x in R^N : x_i >= 0, sum x_i <= 1}.
struct SimplexDomain {
  std::size_t n = 1;

  template <class S>
  bool contains(const Vec<S>& x) const {
    if (x.size() != n) return false;
    S sum = 0;
    for (const auto& xi : x) {
      if (xi < S(0)) return false;
      sum += xi;
    }
    return sum <= S(1);
  }

  // Open simplex: x_i > 0 and sum x_i < 1. The float profile uses the strict
  // tolerance so that points on a face are not reported as interior.
  template <class S>
  bool interior(const Vec<S>& x) const {
    if (x.size() != n) return false;
    S sum = 0;
    for (const auto& xi : x) {
      if (Arith<S>::sign(xi, kStrictTolerance) <= 0) return false;
      sum += xi;
    }
    return Arith<S>::sign(S(S(1) - sum), kStrictTolerance) > 0;
  }

  // Volume of Sigma_N cut by {|x| <= t}, t in [0, 1].
  Rational slab_volume(const Rational& t) const;
};

// argmin over Sigma_N of |x - c|.
template <class S>
Vec<S> simplex_project(const Vec<S>& c);

template <class S>
class EnvelopeFunction {
 public:
  EnvelopeFunction(PLConvexFunction<S> u, PLConvexFunction<S> v, std::size_t big_n);

  const PLConvexFunction<S>& u() const { return u_; }
  const PLConvexFunction<S>& v() const { return v_; }
  std::size_t n() const { return u_.dim(); }
  std::size_t big_n() const { return big_n_; }

 private:
  PLConvexFunction<S> u_;
  PLConvexFunction<S> v_;
  std::size_t big_n_;
};

template <class S>
S envelope_eval(const EnvelopeFunction<S>& e, const Vec<S>& p, const Vec<S>& y);

// The maximizer x-hat of the sup, i.e. simplex_project(c / 2).
template <class S>
Vec<S> envelope_maximizer(const EnvelopeFunction<S>& e, const Vec<S>& p, const Vec<S>& y);

enum class GradientRegion { kInterior, kBoundary, kKink };

std::string to_string(GradientRegion region);

template <class S>
struct EnvelopeGradient {
  Vec<S> grad_p;
  Vec<S> grad_y;
  GradientRegion region = GradientRegion::kBoundary;
};

// At a kink of u or v the first maximizing piece is used, giving a one-sided
// representative.
template <class S>
EnvelopeGradient<S> envelope_gradient(const EnvelopeFunction<S>& e, const Vec<S>& p, const Vec<S>& y);

// Sampling region for the gradient image. p ranges over [p_lo, p_hi] and
// every y_i over [y_lo, y_hi] with y_hi = sup_box(u - v) + 2.
struct SamplingBox {
  Vec<double> p_lo;
  Vec<double> p_hi;
  double y_lo = 0.0;
  double y_hi = 0.0;
  Rational sup_gap = 0;  // C = max over the p-box of u - v
};

template <class S>
SamplingBox default_sampling_box(const EnvelopeFunction<S>& e);

struct MassDiagnostics {
  std::size_t draws = 0;
  std::size_t kinks_skipped = 0;
  std::size_t hull_points = 0;
  double half_value = 0.0;        // hull volume after the first half of the samples
  double max_interior_y = 0.0;    // largest y_i among interior-region samples
  double support_bound = 0.0;     // C + 2
  bool support_ok = true;
};

struct MassEstimate {
  double value = 0.0;
  std::optional<Rational> exact;  // exact-newton estimates in the rational profile
  std::string method;             // "exact-newton" or "mc-hull"
  double error_bound = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::optional<MassDiagnostics> diagnostics;
};

template <class S>
MassEstimate exact_newton_mass(const PLConvexFunction<S>& f);

// Throws InvalidInput when samples < n + N + 1 and SamplingError when too
// many draws land on kinks or the box misses an extreme slope.
template <class S>
MassEstimate gradient_image_mass(const EnvelopeFunction<S>& e, std::size_t samples, std::uint64_t seed,
                                 const std::optional<SamplingBox>& box = std::nullopt);

// Low-discrepancy points in [0,1)^dim: Halton sequence with a random shift
// modulo one drawn from the seed.
class ShiftedHalton {
 public:
  ShiftedHalton(std::size_t dim, std::uint64_t seed);
  Vec<double> next();

 private:
  std::vector<unsigned> bases_;
  Vec<double> shift_;
  std::uint64_t index_ = 0;
};

#define TORIMASS_ENVELOPE_EXTERN(S)                                                                           \
  extern template Vec<S> simplex_project(const Vec<S>&);                                                      \
  extern template class EnvelopeFunction<S>;                                                                  \
  extern template S envelope_eval(const EnvelopeFunction<S>&, const Vec<S>&, const Vec<S>&);                  \
  extern template Vec<S> envelope_maximizer(const EnvelopeFunction<S>&, const Vec<S>&, const Vec<S>&);        \
  extern template EnvelopeGradient<S> envelope_gradient(const EnvelopeFunction<S>&, const Vec<S>&,            \
                                                        const Vec<S>&);                                       \
  extern template SamplingBox default_sampling_box(const EnvelopeFunction<S>&);                               \
  extern template MassEstimate exact_newton_mass(const PLConvexFunction<S>&);                                 \
  extern template MassEstimate gradient_image_mass(const EnvelopeFunction<S>&, std::size_t, std::uint64_t,    \
                                                   const std::optional<SamplingBox>&);

TORIMASS_ENVELOPE_EXTERN(Rational)
TORIMASS_ENVELOPE_EXTERN(double)
#undef TORIMASS_ENVELOPE_EXTERN

}  // namespace torimass
