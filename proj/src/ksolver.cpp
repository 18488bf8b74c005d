#include "linnik/ksolver.hpp"

#include <cmath>
#include <string>

#include "linnik/errors.hpp"

namespace linnik {
namespace {

constexpr int kMaxK = 10000;

void check_solver_inputs(double minor, double lambda, int k_floor) {
  if (!(lambda > 0.0 && lambda < 1.0)) throw DomainError("solve_k: lambda must lie in (0, 1) for a finite K");
  if (!(minor > 0.0)) throw DomainError("solve_k: minor constant must be positive");
  if (k_floor < 2) throw DomainError("solve_k: k_floor must be at least 2");
}

bool admissible(double minor, double major, double lambda, int K) {
  return minor * std::pow(lambda, K - 2) < major;
}

}  // namespace

Rational theta_unconditional() { return {263, 308}; }
Rational theta_grh() { return {3, 4}; }

double required_exponent(const Rational& theta) {
  if (!(theta > Rational(1, 2) && theta < Rational(1))) throw DomainError("required_exponent: theta must lie in (1/2, 1)");
  return (Rational(2) * theta - Rational(1)).to_double();
}

int solve_k(double minor, double major, double lambda, int k_floor) {
  check_solver_inputs(minor, lambda, k_floor);
  if (!(major > 0.0)) throw DomainError("solve_k: major constant must be positive");
  // minor * lambda^t < major  <=>  t > log(minor/major) / log(1/lambda).
  const double threshold = std::log(minor / major) / std::log(1.0 / lambda);
  int t = threshold < 0.0 ? 0 : static_cast<int>(std::floor(threshold)) + 1;
  // Settle the boundary case by direct evaluation.
  while (t > 0 && admissible(minor, major, lambda, t + 1)) --t;
  while (!admissible(minor, major, lambda, t + 2)) ++t;
  return std::max(k_floor, t + 2);
}

int solve_k(double minor, const std::function<double(int)>& major_at, double lambda, int k_floor) {
  check_solver_inputs(minor, lambda, k_floor);
  for (int K = k_floor; K <= kMaxK; ++K) {
    if (admissible(minor, major_at(K), lambda, K)) return K;
  }
  throw DomainError("solve_k: no admissible K below " + std::to_string(kMaxK));
}

LambdaSearch min_lambda(const Rational& theta, const ExpSumTable& table, double tol) {
  if (!(tol > 0.0)) throw DomainError("min_lambda: tol must be positive");
  const double target = required_exponent(theta) + kExponentMargin;
  XiOptimum at_one = optimize_xi(1.0, table);
  if (!(at_one.result.E.value > target)) {
    throw ThresholdUnattainable("min_lambda: E(1) = " + std::to_string(at_one.result.E.value) +
                                    " does not exceed 2 theta - 1 for h = " + std::to_string(table.h()),
                                at_one.result.E.value);
  }
  // max_xi E(lambda, xi) is increasing in lambda, so bisect.
  double lo = 0.0;
  LambdaSearch hi{1.0, at_one};
  while (hi.lambda - lo > tol) {
    const double mid = 0.5 * (lo + hi.lambda);
    XiOptimum opt = optimize_xi(mid, table);
    if (opt.result.E.value > target) {
      hi = {mid, opt};
    } else {
      lo = mid;
    }
  }
  return hi;
}

TheoremReport full_report(const ConfigPreset& preset, bool grh, const ReportOptions& options) {
  return full_report(preset, grh, options, build_table(options.h));
}

TheoremReport full_report(const ConfigPreset& preset, bool grh, const ReportOptions& options, const ExpSumTable& table) {
  if (table.h() != options.h) throw DomainError("full_report: table h does not match options");
  if (options.k_floor < kSingularSeriesKFloor) {
    throw DomainError("full_report: k_floor below 7 is outside the singular-series bounds");
  }

  TheoremReport r;
  r.preset_name = preset.name;
  r.grh = grh;
  r.theta = grh ? theta_grh() : theta_unconditional();
  r.h = options.h;
  r.D = preset.D;
  r.c1 = preset.C1;
  r.k_floor = options.k_floor;

  r.c0 = compute_c0(options.prime_limit);
  r.c2_upper = c2_upper(options.c2_M, options.tail_coefficient);
  r.c2_lower = c2_lower(options.c2_lower_limit);
  r.c2_used = preset.C2_upper_override ? ConstantEstimate::exact(*preset.C2_upper_override, Direction::upper_bound)
                                       : r.c2_upper;
  r.minor = preset.minor_constant_override
                ? ConstantEstimate::exact(*preset.minor_constant_override, Direction::upper_bound)
                : minor_arc_constant(r.c0, preset.C1, r.c2_used);

  r.required_E = required_exponent(r.theta);
  if (options.search_lambda) {
    const LambdaSearch found = min_lambda(r.theta, table);
    r.lambda = found.lambda;
    r.xi = found.optimum.xi_star;
    r.exponent = found.optimum.result;
  } else {
    r.lambda = grh ? kLambdaGrh : kLambdaUnconditional;
    r.xi = grh ? kXiGrh : kXiUnconditional;
    r.exponent = exponent_E(r.lambda, r.xi, table);
  }
  if (!(r.exponent.E.value > r.required_E + kExponentMargin)) {
    throw std::runtime_error("full_report: E(" + std::to_string(r.lambda) + ") = " +
                             std::to_string(r.exponent.E.value) + " does not exceed 2 theta - 1 + 1e-8");
  }

  const unsigned D = preset.D;
  const unsigned floor = static_cast<unsigned>(options.k_floor);
  r.K_min = solve_k(
      r.minor.value, [&](int K) { return major_arc_constant(D, static_cast<unsigned>(K), floor).value; }, r.lambda,
      options.k_floor);
  r.major = major_arc_constant(D, static_cast<unsigned>(r.K_min), floor);
  r.K_inequality = solve_k(r.minor.value, r.major.value, r.lambda, 2);
  r.bound_by = r.K_inequality < r.K_min ? "floor" : "inequality";
  return r;
}

}  // namespace linnik
