#ifndef ADMWEX_SCALAR_HPP
#define ADMWEX_SCALAR_HPP

#include <cmath>
#include <cstdio>
#include <string>
#include <type_traits>

#include "admwex/rational.hpp"

namespace admwex {

// One computation runs entirely in a single scalar mode: every pipeline type
// below is templated on K which is either Rational (exact) or double.
template <class K>
struct scalar_traits;

template <>
struct scalar_traits<Rational> {
  static constexpr bool is_exact = true;
  static Rational from_ratio(long n, long d = 1) { return Rational(n, d); }
  static Rational from_rational(const Rational& r) { return r; }
  static double to_double(const Rational& r) { return r.to_double(); }
  static bool is_zero(const Rational& r) { return r.is_zero(); }
  static bool is_integer(const Rational& r) { return r.is_integer(); }
  static long to_long(const Rational& r) { return r.to_long(); }
  static std::string str(const Rational& r) { return r.str(); }
};

template <>
struct scalar_traits<double> {
  static constexpr bool is_exact = false;
  static double from_ratio(long n, long d = 1) { return static_cast<double>(n) / static_cast<double>(d); }
  static double from_rational(const Rational& r) { return r.to_double(); }
  static double to_double(double x) { return x; }
  static bool is_zero(double x) { return x == 0.0; }
  static bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }
  static long to_long(double x) { return static_cast<long>(std::llround(x)); }
  static std::string str(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
  }
};

template <class K>
concept ScalarMode = std::is_same_v<K, Rational> || std::is_same_v<K, double>;

// s^e for integer exponent e (possibly negative); s != 0 when e < 0.
template <ScalarMode K>
K pow_int(const K& s, long e) {
  if constexpr (scalar_traits<K>::is_exact) {
    return admwex::pow_int(s, e);
  } else {
    return std::pow(s, static_cast<double>(e));
  }
}

template <ScalarMode K>
K abs_val(const K& s) {
  if constexpr (scalar_traits<K>::is_exact) {
    return abs(s);
  } else {
    return std::fabs(s);
  }
}

}  // namespace admwex

#endif  // ADMWEX_SCALAR_HPP
