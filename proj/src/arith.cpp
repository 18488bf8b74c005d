#include "linnik/arith.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "linnik/errors.hpp"

namespace linnik {

PrimeSieve::PrimeSieve(uint64_t limit, uint64_t budget) : limit_(limit) {
  if (limit < 2) throw DomainError("sieve limit must be at least 2, got " + std::to_string(limit));
  if (limit > budget || limit >= (uint64_t{1} << 32)) {
    throw ResourceError("sieve limit " + std::to_string(limit) + " exceeds budget " + std::to_string(budget));
  }
  composite_.assign(limit + 1, 0);
  composite_[0] = composite_[1] = 1;
  for (uint64_t p = 2; p * p <= limit; ++p) {
    if (composite_[p]) continue;
    for (uint64_t q = p * p; q <= limit; q += p) composite_[q] = 1;
  }
  for (uint64_t n = 2; n <= limit; ++n) {
    if (!composite_[n]) primes_.push_back(static_cast<uint32_t>(n));
  }
}

uint64_t FactorMap::product() const {
  uint64_t r = 1;
  for (const auto& [p, e] : factors) {
    for (unsigned i = 0; i < e; ++i) r *= p;
  }
  return r;
}

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<uint128>(a) * b % m);
}

uint64_t powmod(uint64_t base, uint64_t exp, uint64_t m) {
  if (m == 1) return 0;
  uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are deterministic below 3.3 * 10^24.
  for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

namespace {

constexpr uint64_t kTrialLimit = uint64_t{1} << 16;

const std::vector<uint32_t>& trial_primes() {
  static const std::vector<uint32_t> primes = [] {
    PrimeSieve sieve(kTrialLimit);
    return std::vector<uint32_t>(sieve.primes().begin(), sieve.primes().end());
  }();
  return primes;
}

// Brent's variant of Pollard rho. n must be odd and composite.
uint64_t rho_factor(uint64_t n) {
  for (uint64_t c = 1;; ++c) {
    uint64_t y = 2, x = 2, q = 1, g = 1, ys = 2;
    const uint64_t m = 128;
    uint64_t r = 1;
    auto f = [&](uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (uint64_t i = 0; i < r; ++i) y = f(y);
      uint64_t k = 0;
      do {
        ys = y;
        for (uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split_cofactor(uint64_t n, std::vector<uint64_t>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out.push_back(n);
    return;
  }
  const uint64_t d = rho_factor(n);
  split_cofactor(d, out);
  split_cofactor(n / d, out);
}

}  // namespace

FactorMap factorize(uint64_t n) {
  if (n == 0 || n >= (uint64_t{1} << 63)) {
    throw RangeError("factorize: n must satisfy 1 <= n < 2^63, got " + std::to_string(n));
  }
  FactorMap result;
  result.n = n;
  uint64_t rest = n;
  for (uint64_t p : trial_primes()) {
    if (p * p > rest) break;
    if (rest % p != 0) continue;
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    result.factors.push_back({p, e});
  }
  if (rest == 1) return result;
  if (rest < kTrialLimit * kTrialLimit) {
    // No factor below 2^16 and rest < 2^32, so rest is prime.
    result.factors.push_back({rest, 1});
    return result;
  }
  std::vector<uint64_t> large;
  split_cofactor(rest, large);
  std::sort(large.begin(), large.end());
  for (uint64_t p : large) {
    if (!result.factors.empty() && result.factors.back().prime == p) {
      ++result.factors.back().exponent;
    } else {
      result.factors.push_back({p, 1});
    }
  }
  return result;
}

std::vector<uint64_t> divisors(const FactorMap& f) {
  std::vector<uint64_t> divs{1};
  for (const auto& [p, e] : f.factors) {
    const size_t base = divs.size();
    uint64_t pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

uint64_t euler_phi(const FactorMap& f) {
  uint64_t phi = f.n;
  for (const auto& [p, e] : f.factors) phi = phi / p * (p - 1);
  return phi;
}

uint64_t euler_phi(uint64_t n) { return euler_phi(factorize(n)); }

int mobius(const FactorMap& f) {
  for (const auto& pe : f.factors) {
    if (pe.exponent > 1) return 0;
  }
  return (f.factors.size() % 2 == 0) ? 1 : -1;
}

int mobius(uint64_t n) { return mobius(factorize(n)); }

uint64_t mult_order2(const FactorMap& d) {
  if (d.n % 2 == 0) throw DomainError("mult_order2: modulus must be odd, got " + std::to_string(d.n));
  if (d.n == 1) return 1;
  // The order divides phi(d); strip prime factors of phi while 2^e stays 1.
  const uint64_t phi = euler_phi(d);
  uint64_t order = phi;
  for (const auto& [q, e] : factorize(phi).factors) {
    for (unsigned i = 0; i < e && order % q == 0; ++i) {
      if (powmod(2, order / q, d.n) != 1) break;
      order /= q;
    }
  }
  return order;
}

uint64_t mult_order2(uint64_t d) {
  if (d == 0 || d % 2 == 0) throw DomainError("mult_order2: modulus must be odd, got " + std::to_string(d));
  return mult_order2(factorize(d));
}

Rational k_function(const FactorMap& f) {
  Rational r(1);
  for (const auto& [p, e] : f.factors) {
    if (p == 2 || e >= 2) return Rational(0);
    r *= Rational(1, static_cast<int128>(p - 2));
  }
  return r;
}

Rational k_function(uint64_t d) { return k_function(factorize(d)); }

Rational h_function(const FactorMap& f) {
  Rational r(1);
  for (const auto& pe : f.factors) {
    if (pe.prime == 2) continue;
    r *= Rational(static_cast<int128>(pe.prime - 1), static_cast<int128>(pe.prime - 2));
  }
  return r;
}

Rational h_function(uint64_t n) { return h_function(factorize(n)); }

Rational divisor_k_sum(uint64_t n) {
  if (n == 0 || n % 2 != 0) throw DomainError("divisor_k_sum: n must be even and positive, got " + std::to_string(n));
  Rational sum(0);
  for (uint64_t d : divisors(factorize(n))) sum += k_function(d);
  return sum;
}

unsigned binary_weight(uint64_t n) { return static_cast<unsigned>(std::popcount(n)); }

}  // namespace linnik
