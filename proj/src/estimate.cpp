#include "linnik/estimate.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "linnik/errors.hpp"

namespace linnik {
namespace {

constexpr double kU = std::numeric_limits<double>::epsilon();  // 2^-52
constexpr double kInf = std::numeric_limits<double>::infinity();

// The bound itself is computed in floating point; inflate slightly so its
// own rounding cannot make it optimistic.
double inflate(double err) { return err * (1.0 + 8.0 * kU); }

}  // namespace

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::lower_bound:
      return "lower_bound";
    case Direction::upper_bound:
      return "upper_bound";
    case Direction::two_sided:
      return "two_sided";
  }
  return "two_sided";
}

double round_down(double v, double err) { return std::nextafter(v - err, -kInf); }
double round_up(double v, double err) { return std::nextafter(v + err, kInf); }

Tracked Tracked::from(const Rational& r) { return {r.to_double(), r.to_double_error()}; }

Tracked operator+(const Tracked& a, const Tracked& b) {
  const double v = a.value_ + b.value_;
  return {v, inflate(a.error_ + b.error_ + std::abs(v) * kU)};
}

Tracked operator-(const Tracked& a, const Tracked& b) {
  const double v = a.value_ - b.value_;
  return {v, inflate(a.error_ + b.error_ + std::abs(v) * kU)};
}

Tracked operator*(const Tracked& a, const Tracked& b) {
  const double v = a.value_ * b.value_;
  const double prop = std::abs(a.value_) * b.error_ + std::abs(b.value_) * a.error_ + a.error_ * b.error_;
  return {v, inflate(prop + std::abs(v) * kU)};
}

Tracked operator/(const Tracked& a, const Tracked& b) {
  const double denom = std::abs(b.value_) - b.error_;
  if (!(denom > 0.0)) throw DomainError("Tracked: divisor interval contains zero");
  const double v = a.value_ / b.value_;
  const double prop = (a.error_ + std::abs(v) * b.error_) / denom;
  return {v, inflate(prop + std::abs(v) * kU)};
}

Tracked exp(const Tracked& x) {
  const double v = std::exp(x.value());
  // |exp(x + t) - exp(x)| <= exp(x) * expm1(|t|) for |t| <= err.
  const double prop = v * std::expm1(x.error());
  return {v, inflate(prop + v * 4.0 * kU)};
}

Tracked log(const Tracked& x) {
  if (!(x.value() - x.error() > 0.0)) throw DomainError("Tracked: log of non-positive interval");
  const double v = std::log(x.value());
  // Worst case is the lower endpoint: -log1p(-err/x).
  const double prop = -std::log1p(-x.error() / x.value());
  return {v, inflate(prop + std::abs(v) * 4.0 * kU + std::numeric_limits<double>::denorm_min())};
}

Tracked ln2() { return {std::numbers::ln2, std::numbers::ln2 * kU}; }

ConstantEstimate Tracked::lower() const {
  return {round_down(value_, error_), error_, Direction::lower_bound};
}

ConstantEstimate Tracked::upper() const {
  return {round_up(value_, error_), error_, Direction::upper_bound};
}

ConstantEstimate Tracked::two_sided() const { return {value_, error_, Direction::two_sided}; }

}  // namespace linnik
