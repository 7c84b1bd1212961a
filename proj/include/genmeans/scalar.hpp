#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <string_view>

#include <Eigen/Core>
#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include "errors.hpp"

namespace genmeans {

using Index = Eigen::Index;

/// Exact backend: arbitrary-precision rationals, expression templates off so
/// the type behaves as a plain value inside Eigen kernels.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

inline constexpr double kDefaultTolerance = 1e-10;

template <class Scalar>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr std::string_view name = "rational";

  static Rational from_rational(const Rational& q) { return q; }
  static Rational abs(const Rational& q) { return boost::multiprecision::abs(q); }
  static double to_double(const Rational& q) { return q.convert_to<double>(); }
  static bool near(const Rational& a, const Rational& b, double /*eps*/) { return a == b; }
  static bool is_zero(const Rational& a) { return a == 0; }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr std::string_view name = "f64";

  static double from_rational(const Rational& q) { return q.convert_to<double>(); }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
  static bool near(double a, double b, double eps) { return std::fabs(a - b) <= eps; }
  static bool is_zero(double a) { return a == 0.0; }
};

template <class Scalar>
concept Backend = requires { ScalarTraits<Scalar>::exact; };

/// Parses "p/q", an integer, or a finite decimal ("0.25", "-1.5e-3") exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto fail = [&] { return InvalidParameter("not a rational number: '" + s + "'"); };
  if (s.empty()) throw fail();
  try {
    if (auto slash = s.find('/'); slash != std::string::npos) {
      if (s.find('/', slash + 1) != std::string::npos) throw fail();
      const Rational num = parse_rational(s.substr(0, slash));
      const Rational den = parse_rational(s.substr(slash + 1));
      if (den == 0) throw fail();
      return num / den;
    }
    std::string mantissa = s;
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string::npos) {
      mantissa = s.substr(0, e);
      exponent = std::stol(s.substr(e + 1));
    }
    bool negative = false;
    if (!mantissa.empty() && (mantissa[0] == '-' || mantissa[0] == '+')) {
      negative = mantissa[0] == '-';
      mantissa.erase(0, 1);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_point = false;
    for (char c : mantissa) {
      if (c == '.') {
        if (seen_point) throw fail();
        seen_point = true;
      } else if (c >= '0' && c <= '9') {
        digits += c;
        if (seen_point) ++frac_digits;
      } else {
        throw fail();
      }
    }
    if (digits.empty()) throw fail();
    // gmp reads a leading 0 as an octal prefix
    digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
    Rational value{boost::multiprecision::mpz_int(digits)};
    long shift = exponent - frac_digits;
    boost::multiprecision::mpz_int ten_pow = boost::multiprecision::pow(
        boost::multiprecision::mpz_int(10), static_cast<unsigned>(shift < 0 ? -shift : shift));
    value = shift < 0 ? value / Rational(ten_pow) : value * Rational(ten_pow);
    return negative ? -value : value;
  } catch (const InvalidParameter&) {
    throw;
  } catch (const std::exception&) {
    throw fail();
  }
}

inline std::string to_string(const Rational& q) { return q.str(); }

inline std::string to_string(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace genmeans
