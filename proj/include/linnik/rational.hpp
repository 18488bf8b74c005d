#pragma once

#include <compare>
#include <cstdint>
#include <string>

namespace linnik {

using int128 = __int128;
using uint128 = unsigned __int128;

std::string to_string(int128 v);

/// Exact fraction over 128-bit integers, always kept in lowest terms with a
/// positive denominator. Arithmetic throws std::overflow_error rather than
/// wrapping.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(int128 num);  // NOLINT(google-explicit-constructor)
  Rational(int128 num, int128 den);

  int128 num() const { return num_; }
  int128 den() const { return den_; }

  bool is_zero() const { return num_ == 0; }

  /// Nearest double; relative error at most 2^-52 (two roundings of the
  /// operands plus one for the quotient are folded into to_double_error).
  double to_double() const;
  /// Bound on |to_double() - exact value|.
  double to_double_error() const;

  std::string str() const;

  friend Rational operator+(const Rational& a, const Rational& b);
  friend Rational operator-(const Rational& a, const Rational& b);
  friend Rational operator*(const Rational& a, const Rational& b);
  friend Rational operator/(const Rational& a, const Rational& b);
  Rational operator-() const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b);

 private:
  int128 num_ = 0;
  int128 den_ = 1;
};

int128 gcd128(int128 a, int128 b);

}  // namespace linnik
