#pragma once

// Scalar profiles. Every geometric routine is instantiated for two number
// types: exact rationals (the ground truth) and doubles with tie tolerances.

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace torimass {

using Rational = boost::multiprecision::mpq_rational;

template <class S>
using Vec = std::vector<S>;

enum class Profile { kRational, kFloat };

std::string to_string(Profile profile);
Profile parse_profile(std::string_view text);

// Tie tolerance for geometric predicates in the float profile.
inline constexpr double kTieTolerance = 1e-9;
// Equality tolerance for strict-below comparisons {f < g} in the float profile.
inline constexpr double kStrictTolerance = 1e-12;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class InvalidInput : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class SamplingError : public Error {
 public:
  using Error::Error;
};

// Parses "3", "-1.25", "2e-3" or "7/4" into an exact rational.
Rational parse_rational(std::string_view text);
// Renders "p/q", or "p" when the denominator is one.
std::string format_rational(const Rational& value);
// Shortest round-trip decimal rendering.
std::string format_double(double value);

template <class S>
struct Arith;

template <>
struct Arith<Rational> {
  static constexpr bool kExact = true;
  static constexpr Profile kProfile = Profile::kRational;

  static int sign(const Rational& v, double /*tol*/ = 0.0) { return v.sign(); }
  static double to_double(const Rational& v) { return v.convert_to<double>(); }
  static Rational from_rational(const Rational& r) { return r; }
  static Rational abs(const Rational& v) { return v.sign() < 0 ? Rational(-v) : v; }
  static std::string format(const Rational& v) { return format_rational(v); }
};

template <>
struct Arith<double> {
  static constexpr bool kExact = false;
  static constexpr Profile kProfile = Profile::kFloat;

  static int sign(double v, double tol = kTieTolerance) {
    if (v > tol) return 1;
    if (v < -tol) return -1;
    return 0;
  }
  static double to_double(double v) { return v; }
  static double from_rational(const Rational& r) { return r.convert_to<double>(); }
  static double abs(double v) { return v < 0 ? -v : v; }
  static std::string format(double v) { return format_double(v); }
};

template <class S>
bool is_zero(const S& v, double tol = kTieTolerance) {
  return Arith<S>::sign(v, tol) == 0;
}

template <class S>
S dot(const Vec<S>& a, const Vec<S>& b) {
  S acc = 0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

template <class To, class From>
Vec<To> convert_vec(const Vec<From>& v) {
  Vec<To> out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if constexpr (std::is_same_v<To, From>) {
      out.push_back(x);
    } else if constexpr (std::is_same_v<To, double>) {
      out.push_back(Arith<From>::to_double(x));
    } else {
      static_assert(std::is_same_v<To, Rational>, "unsupported conversion");
      out.push_back(Rational(x));
    }
  }
  return out;
}

template <class To, class From>
To convert_scalar(const From& v) {
  if constexpr (std::is_same_v<To, From>) {
    return v;
  } else if constexpr (std::is_same_v<To, double>) {
    return Arith<From>::to_double(v);
  } else {
    return Rational(v);
  }
}

Rational factorial(unsigned n);

}  // namespace torimass
