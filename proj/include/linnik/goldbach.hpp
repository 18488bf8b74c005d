#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "linnik/arith.hpp"

namespace linnik {

/// N = p + p_prime + sum_j 2^exponents[j].
struct RepWitness {
  uint64_t N = 0;
  uint64_t p = 0;
  uint64_t p_prime = 0;
  std::vector<unsigned> exponents;  // descending

  /// Power-of-two part, sum_j 2^exponents[j].
  uint64_t power_sum() const;
};

/// Smallest exponent allowed for the powers of two: 1 (powers start at 2,
/// the default) or 0 (powers start at 1).
struct PowerConvention {
  unsigned min_exponent = 1;
};

/// Pair of primes summing to n with the smaller prime minimal, if any.
/// Throws RangeError if n exceeds the sieve.
std::optional<std::pair<uint64_t, uint64_t>> is_sum_two_primes(uint64_t n, const PrimeSieve& sieve);

/// Every m <= max expressible as a sum of exactly K powers of two, ascending.
std::vector<uint64_t> k_powers_sums(unsigned K, uint64_t max, PowerConvention conv = {});

/// Exactly K exponents (each >= conv.min_exponent) whose powers sum to m.
/// Throws DomainError if m has no such representation.
std::vector<unsigned> split_into_powers(uint64_t m, unsigned K, PowerConvention conv = {});

/// First witness scanning m over k_powers_sums ascending. nullopt when no
/// representation exists, including N < 2K + 4 where no prime pair fits.
/// Throws DomainError for odd N, RangeError for N beyond the sieve.
std::optional<RepWitness> find_representation(uint64_t N, unsigned K, const PrimeSieve& sieve,
                                              PowerConvention conv = {});

/// Re-derives the witness without the sieve: trial-division primality and
/// recomputed power sum.
bool validate_witness(const RepWitness& w, unsigned K, PowerConvention conv = {});

inline constexpr uint64_t kVerifyLimit = 100'000'000;

struct VerifyOptions {
  unsigned threads = 1;
  PowerConvention convention{};
  bool collect_witnesses = false;
};

struct VerifyReport {
  uint64_t lo = 0;
  uint64_t hi = 0;
  unsigned K = 0;
  uint64_t verified_count = 0;
  std::vector<uint64_t> failures;
  std::chrono::duration<double> elapsed{0.0};
  /// Filled in only when VerifyOptions::collect_witnesses is set.
  std::vector<RepWitness> witnesses;
};

/// Checks every even N in [lo, hi]. Requires lo, hi even, lo >= 2K + 4 and
/// hi <= 10^8.
VerifyReport verify_range(uint64_t lo, uint64_t hi, unsigned K, const VerifyOptions& options = {});

/// One line per witness: "N p p' e1 .. eK".
void write_witnesses(std::ostream& os, const std::vector<RepWitness>& witnesses);

}  // namespace linnik
