#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <type_traits>

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

namespace valuta {

/// Exact rational scalar. Expression templates are disabled so the type
/// behaves as a plain value inside Eigen containers and std::map.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class S>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static constexpr const char* name = "exact";
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static constexpr const char* name = "float";
};

template <class S>
inline constexpr bool is_exact_v = scalar_traits<S>::is_exact;

/// Zero test used throughout: exact for rationals, absolute tolerance for floats.
template <class S>
bool is_zero(const S& x, double tol = 1e-12) {
  if constexpr (is_exact_v<S>) {
    return x == 0;
  } else {
    return std::abs(x) <= tol;
  }
}

template <class S>
double to_double(const S& x) {
  if constexpr (is_exact_v<S>) {
    return x.template convert_to<double>();
  } else {
    return x;
  }
}

template <class S>
S abs_value(const S& x) {
  if constexpr (is_exact_v<S>) {
    return x < 0 ? S(-x) : x;
  } else {
    return std::abs(x);
  }
}

/// Parses "p/q", "p" or (for floats) any decimal literal. Result is in lowest terms.
Rational parse_rational(const std::string& text);

/// Lowest-terms "p/q" (or "p" when the denominator is one).
std::string format_rational(const Rational& q);

template <class S>
S scalar_from_string(const std::string& text) {
  if constexpr (is_exact_v<S>) {
    return parse_rational(text);
  } else {
    try {
      std::size_t pos = 0;
      double value = std::stod(text, &pos);
      if (pos == text.size()) return value;
    } catch (const std::exception&) {
    }
    return to_double(parse_rational(text));
  }
}

inline Rational rational(long num, long den = 1) { return Rational(num) / Rational(den); }

inline Rational factorial(int k) {
  Integer f = 1;
  for (int i = 2; i <= k; ++i) f *= i;
  return Rational(f);
}

/// Exact q^(num/den) for q >= 0 when the result is rational, nullopt otherwise.
std::optional<Rational> rational_power(const Rational& q, int num, int den);

/// Raises a scalar to a non-negative integer power.
template <class S>
S power(S base, int exponent) {
  S result(1);
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

}  // namespace valuta
