#include "linnik/rational.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace linnik {
namespace {

int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Rational: 128-bit overflow");
  return r;
}

int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Rational: 128-bit overflow");
  return r;
}

int128 abs128(int128 v) { return v < 0 ? -v : v; }

// Conversion of a 128-bit integer to double. Only the final rounding is
// inexact: the high and low halves are exact doubles and the sum rounds once.
double int128_to_double(int128 v) {
  const bool neg = v < 0;
  uint128 u = neg ? uint128(-(v + 1)) + 1 : uint128(v);
  const auto hi = static_cast<uint64_t>(u >> 64);
  const auto lo = static_cast<uint64_t>(u);
  // hi * 2^64 is exact; lo -> double may round, so split lo further.
  const double d = std::ldexp(static_cast<double>(hi), 64) +
                   (std::ldexp(static_cast<double>(lo >> 32), 32) + static_cast<double>(lo & 0xffffffffu));
  return neg ? -d : d;
}

}  // namespace

std::string to_string(int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  uint128 u = neg ? uint128(-(v + 1)) + 1 : uint128(v);
  std::string s;
  while (u != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    const int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational::Rational(int128 num) : num_(num), den_(1) {}

Rational::Rational(int128 num, int128 den) {
  if (den == 0) throw std::domain_error("Rational: zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const int128 g = gcd128(num, den);
  num_ = g > 1 ? num / g : num;
  den_ = g > 1 ? den / g : den;
}

double Rational::to_double() const {
  if (den_ == 1) return int128_to_double(num_);
  return int128_to_double(num_) / int128_to_double(den_);
}

double Rational::to_double_error() const {
  constexpr double u = std::numeric_limits<double>::epsilon();  // 2^-52
  const double v = std::abs(to_double());
  if (den_ == 1) return abs128(num_) < (int128(1) << 53) ? 0.0 : v * u;
  // Each operand conversion and the quotient contribute at most one ulp.
  return v * 3.0 * u;
}

std::string Rational::str() const {
  if (den_ == 1) return to_string(num_);
  return to_string(num_) + "/" + to_string(den_);
}

Rational operator+(const Rational& a, const Rational& b) {
  const int128 g = gcd128(a.den_, b.den_);
  const int128 bd = b.den_ / g;
  const int128 num = checked_add(checked_mul(a.num_, bd), checked_mul(b.num_, a.den_ / g));
  return {num, checked_mul(a.den_, bd)};
}

Rational operator-(const Rational& a, const Rational& b) { return a + (-b); }

Rational Rational::operator-() const {
  Rational r;
  r.num_ = -num_;
  r.den_ = den_;
  return r;
}

Rational operator*(const Rational& a, const Rational& b) {
  // Cross-cancel first so intermediate products stay small.
  const int128 g1 = gcd128(a.num_, b.den_);
  const int128 g2 = gcd128(b.num_, a.den_);
  const int128 n1 = g1 > 1 ? a.num_ / g1 : a.num_;
  const int128 d2 = g1 > 1 ? b.den_ / g1 : b.den_;
  const int128 n2 = g2 > 1 ? b.num_ / g2 : b.num_;
  const int128 d1 = g2 > 1 ? a.den_ / g2 : a.den_;
  return {checked_mul(n1, n2), checked_mul(d1, d2)};
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
  return a * Rational(b.den_, b.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  const int128 lhs = checked_mul(a.num_, b.den_);
  const int128 rhs = checked_mul(b.num_, a.den_);
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace linnik
