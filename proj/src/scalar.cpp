#include "torimass/scalar.hpp"

#include <array>
#include <cctype>
#include <charconv>

namespace torimass {

using boost::multiprecision::mpz_int;

std::string to_string(Profile profile) {
  return profile == Profile::kRational ? "rational" : "float";
}

Profile parse_profile(std::string_view text) {
  if (text == "rational") return Profile::kRational;
  if (text == "float") return Profile::kFloat;
  throw InvalidInput("unknown profile '" + std::string(text) + "'");
}

namespace {

mpz_int parse_integer(std::string_view digits, std::string_view whole) {
  if (digits.empty()) throw InvalidInput("malformed number '" + std::string(whole) + "'");
  for (char c : digits) {
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw InvalidInput("malformed number '" + std::string(whole) + "'");
    }
  }
  return mpz_int(std::string(digits));
}

mpz_int pow10(long exponent) {
  mpz_int r = 1;
  for (long i = 0; i < exponent; ++i) r *= 10;
  return r;
}

Rational parse_decimal(std::string_view text, std::string_view whole) {
  bool negative = false;
  if (!text.empty() && (text.front() == '-' || text.front() == '+')) {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }
  long exponent = 0;
  if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    std::string_view exp_text = text.substr(e + 1);
    bool exp_negative = false;
    if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
      exp_negative = exp_text.front() == '-';
      exp_text.remove_prefix(1);
    }
    auto [ptr, ec] = std::from_chars(exp_text.data(), exp_text.data() + exp_text.size(), exponent);
    if (ec != std::errc() || ptr != exp_text.data() + exp_text.size() || exp_text.empty() ||
        exponent > 4000) {
      throw InvalidInput("malformed number '" + std::string(whole) + "'");
    }
    if (exp_negative) exponent = -exponent;
    text = text.substr(0, e);
  }
  std::string digits;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (int_part.empty() && frac_part.empty()) {
      throw InvalidInput("malformed number '" + std::string(whole) + "'");
    }
    digits = std::string(int_part) + std::string(frac_part);
    exponent -= static_cast<long>(frac_part.size());
  } else {
    digits = std::string(text);
  }
  mpz_int mantissa = parse_integer(digits, whole);
  Rational value = exponent >= 0 ? Rational(mantissa * pow10(exponent))
                                 : Rational(mantissa, pow10(-exponent));
  return negative ? Rational(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view whole = text;
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) throw InvalidInput("empty number");
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(text.substr(0, slash), whole);
    Rational den = parse_decimal(text.substr(slash + 1), whole);
    if (den == 0) throw InvalidInput("zero denominator in '" + std::string(whole) + "'");
    return num / den;
  }
  return parse_decimal(text, whole);
}

std::string format_rational(const Rational& value) {
  if (denominator(value) == 1) return numerator(value).str();
  return numerator(value).str() + "/" + denominator(value).str();
}

std::string format_double(double value) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), ptr);
}

Rational factorial(unsigned n) {
  Rational r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

}  // namespace torimass
