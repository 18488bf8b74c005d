#pragma once

#include <functional>
#include <stdexcept>
#include <string>

#include "linnik/constants.hpp"
#include "linnik/estimate.hpp"
#include "linnik/expsum.hpp"
#include "linnik/rational.hpp"

namespace linnik {

/// Exponent of the prime exponential sum on the minor arcs.
Rational theta_unconditional();  // 263/308
Rational theta_grh();            // 3/4

/// 2 theta - 1, the exponent the level-set measure must beat. Requires
/// 1/2 < theta < 1.
double required_exponent(const Rational& theta);

/// Least integer K >= k_floor with minor * lambda^(K-2) < major.
/// Throws DomainError unless 0 < lambda < 1 and both constants are positive.
int solve_k(double minor, double major, double lambda, int k_floor);

/// As solve_k, but the major constant is re-evaluated at each candidate K.
int solve_k(double minor, const std::function<double(int)>& major_at, double lambda, int k_floor);

/// Thrown by min_lambda when even lambda = 1 cannot clear the threshold.
class ThresholdUnattainable : public std::runtime_error {
 public:
  ThresholdUnattainable(const std::string& what, double max_exponent)
      : std::runtime_error(what), max_exponent_(max_exponent) {}
  double max_exponent() const { return max_exponent_; }

 private:
  double max_exponent_;
};

/// Margin by which E must exceed 2 theta - 1.
inline constexpr double kExponentMargin = 1e-8;

struct LambdaSearch {
  double lambda = 0.0;
  XiOptimum optimum;
};

/// Smallest lambda (to within tol, rounded up) whose xi-optimised E exceeds
/// 2 theta - 1 + 1e-8.
LambdaSearch min_lambda(const Rational& theta, const ExpSumTable& table, double tol = 1e-7);

/// The lambda and xi exhibited for each theta.
inline constexpr double kLambdaUnconditional = 0.863665;
inline constexpr double kXiUnconditional = 1.181;
inline constexpr double kLambdaGrh = 0.722428;
inline constexpr double kXiGrh = 0.905;

struct ReportOptions {
  unsigned h = kDefaultH;
  uint64_t prime_limit = 200000;
  unsigned c2_M = 20;
  uint64_t c2_lower_limit = 10000;
  double tail_coefficient = kDefaultTailCoefficient;
  int k_floor = kSingularSeriesKFloor;
  /// Search for the least admissible lambda instead of using the exhibited one.
  bool search_lambda = false;
};

struct TheoremReport {
  std::string preset_name;
  bool grh = false;
  Rational theta;
  double lambda = 0.0;
  double xi = 0.0;
  unsigned h = 0;
  ExponentResult exponent;
  double required_E = 0.0;
  ConstantEstimate c0;
  ConstantEstimate c2_upper;
  ConstantEstimate c2_lower;
  ConstantEstimate c2_used;
  double c1 = 0.0;
  ConstantEstimate minor;
  ConstantEstimate major;
  unsigned D = 0;
  int k_floor = 0;
  int K_min = 0;
  /// Smallest K the inequality alone would allow (ignoring the floor).
  int K_inequality = 0;
  /// "inequality" or "floor": which constraint fixed K_min.
  std::string bound_by;
};

/// Runs C0 -> C2 -> minor constant -> lambda/E -> major constant -> K.
TheoremReport full_report(const ConfigPreset& preset, bool grh, const ReportOptions& options = {});
TheoremReport full_report(const ConfigPreset& preset, bool grh, const ReportOptions& options, const ExpSumTable& table);

}  // namespace linnik
