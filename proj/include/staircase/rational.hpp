#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace staircase {

using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;

/// 128-bit binary float used for convergence diagnostics only.
using Float = boost::multiprecision::cpp_bin_float_quad;

/// Parses "p/q" or an integer string. Throws std::invalid_argument on
/// malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" rendering; integers render without a denominator.
std::string to_string(const Rational& q);

inline Float to_float(const Rational& q) { return q.convert_to<Float>(); }

/// x^e with 0^0 = 1.
Rational power(const Rational& x, int e);

/// (x)_r = x (x - 1) ... (x - r + 1); (x)_0 = 1.
Rational falling_factorial(const Rational& x, int r);

Integer factorial(int r);

}  // namespace staircase
