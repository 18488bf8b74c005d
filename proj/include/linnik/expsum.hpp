#pragma once

#include <complex>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "linnik/estimate.hpp"

namespace linnik {

/// sum_{n=0}^{L-1} e(alpha 2^n). The reduction of alpha 2^n mod 1 is exact:
/// doubling and dropping the integer part of a double never rounds.
std::complex<double> t_sum(double alpha, unsigned L);

inline constexpr unsigned kMaxTableH = 26;
inline constexpr unsigned kDefaultH = 16;

/// Re T_h(r / 2^h) for r = 0 .. 2^h - 1.
class ExpSumTable {
 public:
  ExpSumTable(unsigned h, std::vector<double> values);

  unsigned h() const { return h_; }
  size_t size() const { return c_.size(); }
  double operator[](size_t r) const { return c_[r]; }
  const std::vector<double>& values() const { return c_; }

  /// Bound on |c[r] - Re T_h(r/2^h)| from the cosine evaluations.
  double entry_error() const;

 private:
  unsigned h_;
  std::vector<double> c_;
};

/// O(h 2^h) via index doubling against one cosine table. Throws
/// ResourceError for h > kMaxTableH, DomainError for h == 0.
ExpSumTable build_table(unsigned h);

/// Binary cache: 8-byte magic, u32 version, u32 h, then 2^h little-endian
/// IEEE-754 doubles.
void save_table(const ExpSumTable& table, const std::filesystem::path& path);
/// nullopt if the file is missing, malformed, or holds a different h.
std::optional<ExpSumTable> load_table(const std::filesystem::path& path, unsigned h);
ExpSumTable load_or_build_table(const std::optional<std::filesystem::path>& cache, unsigned h);

inline constexpr double kMaxXi = 16.0;

/// Upper bound for F(xi, h) = 2^-h sum_r exp(xi c[r]).
ConstantEstimate big_f(double xi, const ExpSumTable& table);

struct ExponentResult {
  double lambda = 0.0;
  double xi = 0.0;
  unsigned h = 0;
  ConstantEstimate F;     // upper bound
  ConstantEstimate logF;  // upper bound
  ConstantEstimate E;     // lower bound
};

/// Lower bound for xi lambda / log 2 - log F(xi, h) / (h log 2). The
/// arbitrarily small varpi / log 2 term is left to the caller.
ExponentResult exponent_E(double lambda, double xi, const ExpSumTable& table);

struct XiOptimum {
  double xi_star = 0.0;
  ExponentResult result;
};

/// Golden-section maximisation of E over xi in (0, kMaxXi]. E is concave in
/// xi because log F is convex.
XiOptimum optimize_xi(double lambda, const ExpSumTable& table, double tol = 1e-9);

struct MeasureBoundParams {
  double lambda = 0.0;
  double xi = 0.0;
  unsigned h = kDefaultH;
  unsigned L = 0;
  double varpi = 0.01;

  /// Number of rotations 1 + floor(2 pi / varpi).
  uint64_t rotations() const;
  void validate() const;
};

/// M exp(xi (L mod h)) exp(-xi (1 - varpi) lambda L) F(xi,h)^{floor(L/h)},
/// an explicit upper bound on meas{alpha : |T_L(alpha)| >= lambda L}.
/// Rounded upward; may be +inf when vacuous.
double explicit_measure_bound(const MeasureBoundParams& params, const ExpSumTable& table);
/// Natural log of the same bound (rounded upward).
double explicit_measure_log_bound(const MeasureBoundParams& params, const ExpSumTable& table);

struct MonteCarloEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  uint64_t samples = 0;
  uint64_t hits = 0;
};

/// Fraction of uniform alpha with |T_L(alpha)| >= lambda L. Samples are
/// drawn in fixed blocks with per-block seeds, so the result does not
/// depend on the thread count.
MonteCarloEstimate measure_mc(double lambda, unsigned L, uint64_t samples, uint64_t seed, unsigned threads = 1);

/// 2^-h sum_r exp(xi Re(rho T_h((beta + r)/2^h))), rho = e(phase).
double shifted_average(const ExpSumTable& table, double xi, double beta, double phase);

struct SupCheckResult {
  bool passed = true;
  uint64_t trials = 0;
  /// Largest shifted_average / F over all trials.
  double max_ratio = 0.0;
  double worst_beta = 0.0;
  double worst_phase = 0.0;
};

/// Samples (beta, rho) and checks the shifted averages never exceed F(xi,h)
/// beyond rounding tolerance.
SupCheckResult sup_check(const ExpSumTable& table, double xi, uint64_t trials, uint64_t seed, unsigned threads = 1);

}  // namespace linnik
