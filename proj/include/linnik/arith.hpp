#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "linnik/rational.hpp"

namespace linnik {

/// Default cap on sieve size; one byte per integer.
inline constexpr uint64_t kDefaultSieveBudget = 1'000'000'000;

/// Sieve of Eratosthenes over [0, limit]. Immutable after construction and
/// safe to share between threads.
class PrimeSieve {
 public:
  /// Throws DomainError if limit < 2, ResourceError if limit > budget.
  explicit PrimeSieve(uint64_t limit, uint64_t budget = kDefaultSieveBudget);

  uint64_t limit() const { return limit_; }

  bool is_prime(uint64_t n) const { return n <= limit_ && composite_[n] == 0; }

  /// All primes <= limit, ascending.
  std::span<const uint32_t> primes() const { return primes_; }

 private:
  uint64_t limit_;
  std::vector<uint8_t> composite_;
  std::vector<uint32_t> primes_;
};

struct PrimePower {
  uint64_t prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// n together with its factorization, primes strictly increasing.
struct FactorMap {
  uint64_t n = 1;
  std::vector<PrimePower> factors;

  /// Multiplies the factorization back out.
  uint64_t product() const;
};

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m);
uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(uint64_t n);

/// Trial division up to 2^16, then Miller-Rabin and Pollard rho (Brent) on
/// the cofactor.
/// Requires 1 <= n < 2^63.
FactorMap factorize(uint64_t n);

/// All positive divisors of f.n, ascending.
std::vector<uint64_t> divisors(const FactorMap& f);

/// Multiplicative order of 2 modulo odd d; mult_order2(1) == 1.
uint64_t mult_order2(uint64_t d);
uint64_t mult_order2(const FactorMap& d);

int mobius(uint64_t n);
int mobius(const FactorMap& f);
uint64_t euler_phi(uint64_t n);
uint64_t euler_phi(const FactorMap& f);

/// Multiplicative with k(p) = 1/(p-2) for odd p, k(p^e) = 0 for p = 2 or e >= 2.
Rational k_function(uint64_t d);
Rational k_function(const FactorMap& f);

/// Product over odd primes p | n of (p-1)/(p-2).
Rational h_function(uint64_t n);
Rational h_function(const FactorMap& f);

/// Sum of k(d) over divisors d of even n. Equals h_function(n).
Rational divisor_k_sum(uint64_t n);

unsigned binary_weight(uint64_t n);

}  // namespace linnik
