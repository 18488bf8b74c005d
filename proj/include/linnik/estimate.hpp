#pragma once

#include <string_view>

#include "linnik/rational.hpp"

namespace linnik {

enum class Direction { lower_bound, upper_bound, two_sided };

std::string_view to_string(Direction d);

/// A real constant together with an accumulated absolute error bound.
///
/// For lower_bound the claim is `true >= value`; for upper_bound it is
/// `true <= value`. In both cases `value` has already been shifted by
/// `abs_error` (and one further ulp) in the safe direction. For two_sided
/// the claim is `|true - value| <= abs_error`.
struct ConstantEstimate {
  double value = 0.0;
  double abs_error = 0.0;
  Direction direction = Direction::two_sided;

  static ConstantEstimate exact(double v, Direction d) { return {v, 0.0, d}; }
};

/// Double-precision value with a running bound on its distance from the
/// exact real it approximates. Every operation charges one rounding of
/// 2^-52 relative (transcendentals charge four) on top of propagated error.
class Tracked {
 public:
  constexpr Tracked() = default;
  constexpr Tracked(double value, double error = 0.0) : value_(value), error_(error) {}  // NOLINT
  static Tracked from(const Rational& r);

  double value() const { return value_; }
  double error() const { return error_; }

  friend Tracked operator+(const Tracked& a, const Tracked& b);
  friend Tracked operator-(const Tracked& a, const Tracked& b);
  friend Tracked operator*(const Tracked& a, const Tracked& b);
  friend Tracked operator/(const Tracked& a, const Tracked& b);
  Tracked& operator+=(const Tracked& o) { return *this = *this + o; }
  Tracked& operator*=(const Tracked& o) { return *this = *this * o; }

  ConstantEstimate lower() const;
  ConstantEstimate upper() const;
  ConstantEstimate two_sided() const;

 private:
  double value_ = 0.0;
  double error_ = 0.0;
};

Tracked exp(const Tracked& x);
Tracked log(const Tracked& x);

/// ln 2 with its representation error.
Tracked ln2();

/// Shift helpers used when a value is produced outside Tracked.
double round_down(double v, double err);
double round_up(double v, double err);

}  // namespace linnik
