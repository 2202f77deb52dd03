#include "torimass/identity.hpp"

#include <algorithm>
#include <cmath>

namespace torimass {

template <class S>
S moment_value(const MixedVolumePolynomial<S>& poly, std::size_t big_n) {
  if (big_n == 0) throw InvalidInput("moment_integral: N must be positive");
  const S n = S(static_cast<long>(big_n));
  S acc = 0;
  for (std::size_t k = 0; k < poly.coeffs.size(); ++k) acc += poly.coeffs[k] / (n + S(static_cast<long>(k)));
  return n * acc;
}

template <class S>
MomentIntegral<S> moment_integral(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v, std::size_t big_n) {
  if (u.dim() != v.dim()) throw DimensionMismatch("moment_integral: dimension mismatch");
  MomentIntegral<S> m;
  m.big_n = big_n;
  m.poly = mixed_volume_polynomial(newton_polytope(u), newton_polytope(v));
  m.value = moment_value(m.poly, big_n);
  return m;
}

template <class S>
S keyprop_rhs(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v, std::size_t big_n) {
  const S value = moment_integral(u, v, big_n).value;
  return value / S(Arith<S>::from_rational(factorial(static_cast<unsigned>(big_n))));
}

template <class S>
LimitReport<S> limit_check(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v,
                           const std::vector<std::size_t>& big_ns) {
  if (u.dim() != v.dim()) throw DimensionMismatch("limit_check: dimension mismatch");
  LimitReport<S> report;
  const auto poly = mixed_volume_polynomial(newton_polytope(u), newton_polytope(v));
  const S target = total_mass(v);
  for (std::size_t n : big_ns) report.points.push_back({n, Arith<S>::abs(S(moment_value(poly, n) - target))});
  for (const auto& a : report.points) {
    if (a.big_n < 4) continue;
    for (const auto& b : report.points) {
      if (b.big_n != 2 * a.big_n) continue;
      LimitRatio r;
      r.big_n = a.big_n;
      if (Arith<S>::sign(a.error, kStrictTolerance) == 0) {
        r.ratio = 0.0;
        r.pass = Arith<S>::sign(b.error, kStrictTolerance) == 0;
      } else {
        r.ratio = Arith<S>::to_double(S(b.error / a.error));
        r.pass = Arith<S>::sign(S(S(Arith<S>::from_rational(Rational(3, 5))) * a.error - b.error),
                                kStrictTolerance) >= 0;
      }
      report.pass = report.pass && r.pass;
      report.ratios.push_back(r);
    }
  }
  return report;
}

template <class S>
KeypropReport<S> keyprop_check(const PLConvexFunction<S>& u, const PLConvexFunction<S>& v, std::size_t big_n,
                               std::size_t samples, std::uint64_t seed, double tol) {
  KeypropReport<S> r;
  r.big_n = big_n;
  r.tol = tol;
  r.seed = seed;
  r.rhs = keyprop_rhs(u, v, big_n);
  r.lhs = gradient_image_mass(EnvelopeFunction<S>(u, v, big_n), samples, seed);
  const double rhs = Arith<S>::to_double(r.rhs);
  r.pass = std::fabs(r.lhs.value - rhs) <= std::max(tol * rhs, r.abs_floor);
  return r;
}

#define TORIMASS_IDENTITY_INSTANTIATE(S)                                                                      \
  template S moment_value(const MixedVolumePolynomial<S>&, std::size_t);                                      \
  template MomentIntegral<S> moment_integral(const PLConvexFunction<S>&, const PLConvexFunction<S>&,          \
                                             std::size_t);                                                    \
  template S keyprop_rhs(const PLConvexFunction<S>&, const PLConvexFunction<S>&, std::size_t);                \
  template LimitReport<S> limit_check(const PLConvexFunction<S>&, const PLConvexFunction<S>&,                 \
                                      const std::vector<std::size_t>&);                                       \
  template KeypropReport<S> keyprop_check(const PLConvexFunction<S>&, const PLConvexFunction<S>&, std::size_t, \
                                          std::size_t, std::uint64_t, double);

TORIMASS_IDENTITY_INSTANTIATE(Rational)
TORIMASS_IDENTITY_INSTANTIATE(double)

}  // namespace torimass
