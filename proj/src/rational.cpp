#include "staircase/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace staircase {

namespace {

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const auto num = text.substr(0, slash);
  const auto den = slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' ||
      den.front() == '+') {
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  }
  const Integer p{std::string(num.front() == '+' ? num.substr(1) : num)};
  const Integer q{std::string(den)};
  if (q == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return Rational(p, q);
}

std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Rational power(const Rational& x, int e) {
  if (e < 0) return 1 / power(x, -e);
  Rational out = 1;
  for (int i = 0; i < e; ++i) out *= x;
  return out;
}

Rational falling_factorial(const Rational& x, int r) {
  if (r < 0) throw std::invalid_argument("falling factorial order must be nonnegative");
  Rational out = 1;
  for (int t = 0; t < r; ++t) out *= x - t;
  return out;
}

Integer factorial(int r) {
  Integer out = 1;
  for (int t = 2; t <= r; ++t) out *= t;
  return out;
}

}  // namespace staircase
