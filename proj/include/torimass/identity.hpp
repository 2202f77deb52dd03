#pragma once

// Exact moment integrals N * int_0^1 vol((1-t)P_u + tP_v) t^(N-1) dt, their
// N -> infinity limit, and the two-sided check of the gradient-image mass of
// the envelope against the exact value.

#include <cstdint>
#include <string>
#include <vector>

#include "torimass/envelope.hpp"
#include "torimass/plconvex.hpp"
#include "torimass/polytope.hpp"

namespace torimass {

inline constexpr double kKeypropTolerance = 0.02;
inline constexpr double kKeypropAbsFloor = 1e-9;
inline constexpr std::size_t kKeypropSamples = 200000;
inline constexpr double kLimitRatio = 0.6;

template <class S>
struct MomentIntegral {
  std::size_t big_n = 1;
  MixedVolumePolynomial<S> poly;
  S value = 0;
};

// N * sum_k c_k / (N + k).
template <class S>
S moment_value(const MixedVolumePolynomial<S>& poly, std::size_t big_n);

template <class S>
MomentIntegral<S> moment_integral(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v, std::size_t big_n);

// int over Sigma_N of vol((1-|x|)P_u + |x|P_v) dx = moment_integral / N!.
template <class S>
S keyprop_rhs(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v, std::size_t big_n);

template <class S>
struct LimitPoint {
  std::size_t big_n = 1;
  S error = 0;  // |moment_integral(u, v, N) - total_mass(v)|
};

struct LimitRatio {
  std::size_t big_n = 1;  // ratio is error(2N) / error(N)
  double ratio = 0.0;
  bool pass = true;
};

template <class S>
struct LimitReport {
  std::vector<LimitPoint<S>> points;
  std::vector<LimitRatio> ratios;
  bool pass = true;
};

// Ratios are checked for every N >= 4 whose double 2N is also listed.
template <class S>
LimitReport<S> limit_check(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v,
                           const std::vector<std::size_t>& big_ns);

template <class S>
struct KeypropReport {
  std::size_t big_n = 1;
  MassEstimate lhs;
  S rhs = 0;
  double tol = kKeypropTolerance;
  double abs_floor = kKeypropAbsFloor;
  bool pass = false;
  std::string normalization = "toric-lebesgue";
  std::uint64_t seed = 0;
};

// Passes iff |lhs - rhs| <= max(tol * rhs, abs_floor).
template <class S>
KeypropReport<S> keyprop_check(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v, std::size_t big_n,
                               std::size_t samples = kKeypropSamples, std::uint64_t seed = 1,
                               double tol = kKeypropTolerance);

#define TORIMASS_IDENTITY_EXTERN(S)                                                                           \
  extern template S moment_value(const MixedVolumePolynomial<S>&, std::size_t);                               \
  extern template MomentIntegral<S> moment_integral(const PLConvexFunction<S>&, const PLConvexFunction<S>&,   \
                                                    std::size_t);                                             \
  extern template S keyprop_rhs(const PLConvexFunction<S>&, const PLConvexFunction<S>&, std::size_t);         \
  extern template LimitReport<S> limit_check(const PLConvexFunction<S>&, const PLConvexFunction<S>&,          \
                                             const std::vector<std::size_t>&);                                \
  extern template KeypropReport<S> keyprop_check(const PLConvexFunction<S>&, const PLConvexFunction<S>&,      \
                                                 std::size_t, std::size_t, std::uint64_t, double);

TORIMASS_IDENTITY_EXTERN(Rational)
TORIMASS_IDENTITY_EXTERN(double)
#undef TORIMASS_IDENTITY_EXTERN

}  // namespace torimass
