#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linnik/estimate.hpp"
#include "linnik/rational.hpp"

namespace linnik {

/// Lowest K for which the H(d;N,K) lower bounds of the singular-series
/// argument are claimed.
inline constexpr int kSingularSeriesKFloor = 7;
/// K hypothesis attached to the prime-variable lemma; exposed as an
/// alternative floor.
inline constexpr int kPrimeLemmaKFloor = 9;

inline constexpr double kChenC1 = 7.8342;
inline constexpr double kDefaultTailCoefficient = 2.744;

/// Named parameter set for the end-to-end pipeline.
struct ConfigPreset {
  std::string name;
  unsigned D = 5;
  double C1 = kChenC1;
  std::optional<double> C2_upper_override;
  std::optional<double> minor_constant_override;

  static ConfigPreset paper();
  /// D = 21 and the sharper C2 <= 1.992.
  static ConfigPreset elsholtz();
  /// Throws DomainError for an unknown name.
  static ConfigPreset by_name(const std::string& name);
};

/// Lower bound for prod_{p odd} (1 - 1/(p-1)^2): the partial product up to
/// prime_limit times the tail bound 1 - 1/prime_limit.
ConstantEstimate compute_c0(uint64_t prime_limit);
/// The partial product alone, two-sided.
ConstantEstimate c0_partial_product(uint64_t prime_limit);

/// kappa(m) = sum of k(d) over d with order of 2 mod d equal to m,
/// obtained by Moebius inversion of h(2^m - 1).
struct KappaTable {
  unsigned cutoff_M = 0;
  std::map<unsigned, Rational> kappa;  // 1 <= m < cutoff_M

  const Rational& at(unsigned m) const { return kappa.at(m); }
};

/// Requires cutoff_M <= 64; throws RangeError otherwise.
KappaTable build_kappa_table(unsigned cutoff_M);

/// sum_{m<M} kappa(m) (1/m - 1/M), two-sided.
ConstantEstimate kappa_partial_sum(const KappaTable& table);

/// Upper bound for C2 = sum_d k(d)/ord_d(2): the kappa partial sum plus
/// tail_coefficient * (1 + log M) / M. Requires M >= 9.
ConstantEstimate c2_upper(unsigned cutoff_M, double tail_coefficient = kDefaultTailCoefficient);

/// The tail coefficient the C2 tail argument actually needs, e^gamma / C0,
/// evaluated upward from a lower bound on C0.
ConstantEstimate implied_tail_coefficient(const ConstantEstimate& c0);

/// Lower bound for C2 by truncation at d_limit.
ConstantEstimate c2_lower(uint64_t d_limit);

/// Upper bound for (C1 - 2) C2 + log 2 / C0, the minor-arc mean-square
/// constant in units of C0 N / log^2 2.
ConstantEstimate minor_arc_constant(const ConstantEstimate& c0, double c1, const ConstantEstimate& c2);

/// Budget for H_bruteforce enumeration (eps(d)^K tuples).
inline constexpr uint64_t kHEnumerationBudget = 100'000'000;

/// #{(v_1..v_K) in [1, eps(d)]^K : sum 2^{v_i} == n_residue (mod d)} by
/// direct enumeration.
uint64_t H_bruteforce(uint64_t d, uint64_t n_residue, unsigned K);

/// Same count for every residue at once, by convolving the distribution of
/// 2^v mod d K times. Exact; cost O(K d eps(d)).
std::vector<uint128> H_distribution(uint64_t d, unsigned K);

/// Closed form, valid for prime d with 2 a primitive root mod d.
uint128 H_closed_form(uint64_t d, bool divides, unsigned K);

/// Whether the closed form applies to d.
bool H_closed_form_applies(uint64_t d);

/// Cap on the lcm of the moduli scanned by major_arc_constant.
inline constexpr uint64_t kMajorArcResidueBudget = 100'000'000;

/// Lower bound for 2 * min_N sum_{d <= D} k(d) H(d;N,K) eps(d)^-K, the
/// constant in the major-arc lower bound. The minimum over N is exact.
ConstantEstimate major_arc_constant(unsigned D, unsigned K, unsigned k_floor = kSingularSeriesKFloor);

/// Diagnostic: sum over odd squarefree q <= q_limit with eps(q) <= x of
/// q / phi(q)^2.
double gallagher_sum(double x, uint64_t q_limit);

}  // namespace linnik
