#include "linnik/constants.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "linnik/arith.hpp"
#include "linnik/errors.hpp"

namespace linnik {
namespace {

constexpr double kU = std::numeric_limits<double>::epsilon();
constexpr double kEulerGamma = 0.57721566490153286061;

double uint128_to_double(uint128 v) {
  const auto hi = static_cast<uint64_t>(v >> 64);
  const auto lo = static_cast<uint64_t>(v);
  return std::ldexp(static_cast<double>(hi), 64) + static_cast<double>(lo);
}

Tracked tracked_count(uint128 v) {
  const double d = uint128_to_double(v);
  return {d, v < (uint128{1} << 53) ? 0.0 : 2.0 * d * kU};
}

}  // namespace

ConfigPreset ConfigPreset::paper() { return {"paper", 5, kChenC1, std::nullopt, std::nullopt}; }

ConfigPreset ConfigPreset::elsholtz() { return {"elsholtz", 21, kChenC1, 1.992, std::nullopt}; }

ConfigPreset ConfigPreset::by_name(const std::string& name) {
  if (name == "paper") return paper();
  if (name == "elsholtz") return elsholtz();
  throw DomainError("unknown preset '" + name + "' (expected paper or elsholtz)");
}

// ---------------------------------------------------------------------------
// C0

ConstantEstimate c0_partial_product(uint64_t prime_limit) {
  if (prime_limit < 3) throw DomainError("compute_c0: prime_limit must be at least 3");
  const PrimeSieve sieve(prime_limit);
  Tracked product(1.0);
  const Tracked one(1.0);
  for (uint32_t p : sieve.primes()) {
    if (p == 2) continue;
    const double q = static_cast<double>(p - 1) * static_cast<double>(p - 1);  // exact below 2^26
    product *= one - one / Tracked(q);
  }
  return product.two_sided();
}

ConstantEstimate compute_c0(uint64_t prime_limit) {
  const ConstantEstimate partial = c0_partial_product(prime_limit);
  // prod_{p > P} (1 - (p-1)^-2) >= prod_{n >= P} (1 - n^-2) = 1 - 1/P.
  const Tracked one(1.0);
  const Tracked tail = one - one / Tracked(static_cast<double>(prime_limit));
  return (Tracked(partial.value, partial.abs_error) * tail).lower();
}

// ---------------------------------------------------------------------------
// C2

KappaTable build_kappa_table(unsigned cutoff_M) {
  if (cutoff_M > 64) {
    throw RangeError("build_kappa_table: cutoff_M must be <= 64 so 2^m - 1 < 2^63, got " + std::to_string(cutoff_M));
  }
  KappaTable table;
  table.cutoff_M = cutoff_M;
  std::vector<Rational> h_mersenne(cutoff_M);
  for (unsigned d = 1; d < cutoff_M; ++d) h_mersenne[d] = h_function((uint64_t{1} << d) - 1);
  for (unsigned m = 1; m < cutoff_M; ++m) {
    Rational sum(0);
    for (unsigned d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      const int mu = mobius(static_cast<uint64_t>(m / d));
      if (mu == 1) sum += h_mersenne[d];
      if (mu == -1) sum -= h_mersenne[d];
    }
    table.kappa.emplace(m, sum);
  }
  return table;
}

ConstantEstimate kappa_partial_sum(const KappaTable& table) {
  const unsigned M = table.cutoff_M;
  Tracked sum(0.0);
  for (const auto& [m, kappa] : table.kappa) {
    const Rational weight(static_cast<int128>(M - m), static_cast<int128>(m) * M);
    sum += Tracked::from(kappa) * Tracked::from(weight);
  }
  return sum.two_sided();
}

ConstantEstimate c2_upper(unsigned cutoff_M, double tail_coefficient) {
  if (cutoff_M < 9) throw DomainError("c2_upper: the tail bound needs M >= 9, got " + std::to_string(cutoff_M));
  if (!(tail_coefficient >= 0.0)) throw DomainError("c2_upper: tail coefficient must be non-negative");
  const ConstantEstimate partial = kappa_partial_sum(build_kappa_table(cutoff_M));
  const Tracked M(static_cast<double>(cutoff_M));
  const Tracked tail = Tracked(tail_coefficient) * (Tracked(1.0) + log(M)) / M;
  return (Tracked(partial.value, partial.abs_error) + tail).upper();
}

ConstantEstimate implied_tail_coefficient(const ConstantEstimate& c0) {
  if (c0.direction != Direction::lower_bound) throw DomainError("implied_tail_coefficient: C0 must be a lower bound");
  if (!(c0.value > 0.0)) throw DomainError("implied_tail_coefficient: C0 must be positive");
  return (exp(Tracked(kEulerGamma, kEulerGamma * kU)) / Tracked(c0.value)).upper();
}

ConstantEstimate c2_lower(uint64_t d_limit) {
  if (d_limit < 1) throw DomainError("c2_lower: d_limit must be positive");
  Tracked sum(0.0);
  for (uint64_t d = 1; d <= d_limit; d += 2) {
    const FactorMap f = factorize(d);
    const Rational k = k_function(f);
    if (k.is_zero()) continue;
    sum += Tracked::from(k) / Tracked(static_cast<double>(mult_order2(f)));
  }
  return sum.lower();
}

ConstantEstimate minor_arc_constant(const ConstantEstimate& c0, double c1, const ConstantEstimate& c2) {
  if (c0.direction != Direction::lower_bound) throw DomainError("minor_arc_constant: C0 must be a lower bound");
  if (c2.direction != Direction::upper_bound) throw DomainError("minor_arc_constant: C2 must be an upper bound");
  if (!(c0.value > 0.0)) throw DomainError("minor_arc_constant: C0 must be positive");
  if (!(c1 >= 2.0)) throw DomainError("minor_arc_constant: C1 must be at least 2");
  const Tracked first = (Tracked(c1) - Tracked(2.0)) * Tracked(c2.value);
  return (first + ln2() / Tracked(c0.value)).upper();
}

// ---------------------------------------------------------------------------
// H(d; N, K)

namespace {

void check_odd_modulus(uint64_t d, uint64_t min) {
  if (d < min || d % 2 == 0) {
    throw DomainError("H: modulus must be odd and >= " + std::to_string(min) + ", got " + std::to_string(d));
  }
}

std::vector<uint64_t> powers_of_two_mod(uint64_t d) {
  const uint64_t eps = mult_order2(d);
  std::vector<uint64_t> pw(eps);
  uint64_t x = 1;
  for (uint64_t v = 0; v < eps; ++v) {
    x = (2 * x) % d;
    pw[v] = x;
  }
  return pw;
}

}  // namespace

uint64_t H_bruteforce(uint64_t d, uint64_t n_residue, unsigned K) {
  check_odd_modulus(d, 3);
  if (n_residue >= d) throw DomainError("H_bruteforce: residue must lie in [0, d)");
  if (K == 0) throw DomainError("H_bruteforce: K must be positive");
  const std::vector<uint64_t> pw = powers_of_two_mod(d);
  uint64_t tuples = 1;
  for (unsigned i = 0; i < K; ++i) {
    if (tuples > kHEnumerationBudget / pw.size()) {
      throw ResourceError("H_bruteforce: eps(d)^K exceeds the enumeration budget");
    }
    tuples *= pw.size();
  }
  uint64_t count = 0;
  auto recurse = [&](auto& self, unsigned depth, uint64_t partial) -> void {
    if (depth == K) {
      if (partial == n_residue) ++count;
      return;
    }
    for (uint64_t p : pw) {
      uint64_t s = partial + p;
      if (s >= d) s -= d;
      self(self, depth + 1, s);
    }
  };
  recurse(recurse, 0, 0);
  return count;
}

std::vector<uint128> H_distribution(uint64_t d, unsigned K) {
  check_odd_modulus(d, 1);
  if (K == 0) throw DomainError("H_distribution: K must be positive");
  const std::vector<uint64_t> pw = powers_of_two_mod(d);
  if (static_cast<double>(K) * std::log2(static_cast<double>(pw.size())) > 126.0) {
    throw RangeError("H_distribution: eps(d)^K does not fit in 128 bits");
  }
  std::vector<uint128> dist(d, 0), next(d);
  dist[0] = 1;
  for (unsigned step = 0; step < K; ++step) {
    std::fill(next.begin(), next.end(), 0);
    for (uint64_t r = 0; r < d; ++r) {
      if (dist[r] == 0) continue;
      for (uint64_t p : pw) next[(r + p) % d] += dist[r];
    }
    dist.swap(next);
  }
  return dist;
}

bool H_closed_form_applies(uint64_t d) {
  return d >= 3 && d % 2 == 1 && is_prime_u64(d) && mult_order2(d) == d - 1;
}

uint128 H_closed_form(uint64_t d, bool divides, unsigned K) {
  if (!H_closed_form_applies(d)) {
    throw DomainError("H_closed_form: 2 is not a primitive root modulo " + std::to_string(d));
  }
  if (K == 0) throw DomainError("H_closed_form: K must be positive");
  int128 power = 1;
  for (unsigned i = 0; i < K; ++i) {
    if (__builtin_mul_overflow(power, static_cast<int128>(d - 1), &power)) {
      throw RangeError("H_closed_form: (d-1)^K overflows 128 bits");
    }
  }
  const int128 sign = (K % 2 == 0) ? 1 : -1;
  const int128 numerator = divides ? power + sign * static_cast<int128>(d - 1) : power - sign;
  return static_cast<uint128>(numerator / static_cast<int128>(d));
}

ConstantEstimate major_arc_constant(unsigned D, unsigned K, unsigned k_floor) {
  if (K < k_floor) {
    throw DomainError("major_arc_constant: K = " + std::to_string(K) + " is below the floor " + std::to_string(k_floor));
  }
  if (D == 0 || D % 2 == 0) throw DomainError("major_arc_constant: D must be odd and positive");

  struct Term {
    uint64_t d;
    std::vector<double> weight;  // k(d) H(d; r, K) / eps(d)^K for each residue r
    double max_weight = 0.0;
    double max_error = 0.0;
  };
  std::vector<Term> terms;
  uint64_t period = 1;
  for (uint64_t d = 1; d <= D; d += 2) {
    const Rational k = k_function(d);
    if (k.is_zero()) continue;
    period = std::lcm(period, d);
    if (period > kMajorArcResidueBudget) {
      throw ResourceError("major_arc_constant: residue period exceeds budget at d = " + std::to_string(d));
    }

    std::vector<uint128> counts;
    if (H_closed_form_applies(d)) {
      counts.assign(d, H_closed_form(d, false, K));
      counts[0] = H_closed_form(d, true, K);
    } else {
      counts = H_distribution(d, K);
    }
    const uint64_t eps = mult_order2(d);
    Tracked scale(1.0);
    for (unsigned i = 0; i < K; ++i) scale *= Tracked(static_cast<double>(eps));
    const Tracked kd = Tracked::from(k);

    Term term{d, std::vector<double>(d)};
    for (uint64_t r = 0; r < d; ++r) {
      const Tracked w = kd * tracked_count(counts[r]) / scale;
      term.weight[r] = w.value();
      term.max_weight = std::max(term.max_weight, w.value());
      term.max_error = std::max(term.max_error, w.error());
    }
    terms.push_back(std::move(term));
  }

  std::vector<uint64_t> residue(terms.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  for (uint64_t n = 0; n < period; ++n) {
    double total = 0.0;
    for (size_t i = 0; i < terms.size(); ++i) {
      total += terms[i].weight[residue[i]];
      if (++residue[i] == terms[i].d) residue[i] = 0;
    }
    best = std::min(best, total);
  }

  double error = 0.0;
  double magnitude = 0.0;
  for (const Term& t : terms) {
    error += t.max_error;
    magnitude += t.max_weight;
  }
  error += static_cast<double>(terms.size()) * kU * magnitude;
  return (Tracked(2.0) * Tracked(best, error)).lower();
}

double gallagher_sum(double x, uint64_t q_limit) {
  if (!(x >= 1.0)) throw DomainError("gallagher_sum: x must be at least 1");
  double sum = 0.0;
  for (uint64_t q = 1; q <= q_limit; q += 2) {
    const FactorMap f = factorize(q);
    if (mobius(f) == 0) continue;
    if (static_cast<double>(mult_order2(f)) > x) continue;
    const double phi = static_cast<double>(euler_phi(f));
    sum += static_cast<double>(q) / (phi * phi);
  }
  return sum;
}

}  // namespace linnik
