#include "linnik/goldbach.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <string>

#include "linnik/errors.hpp"
#include "parallel.hpp"

namespace linnik {
namespace {

bool representable(uint64_t m, unsigned K, PowerConvention conv) {
  const unsigned e0 = conv.min_exponent;
  if (m == 0 || (m & ((uint64_t{1} << e0) - 1)) != 0) return false;
  const uint64_t units = m >> e0;
  return static_cast<uint64_t>(std::popcount(units)) <= K && K <= units;
}

bool trial_division_prime(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<RepWitness> search(uint64_t N, unsigned K, const PrimeSieve& sieve, const std::vector<uint64_t>& sums,
                                 PowerConvention conv) {
  for (uint64_t m : sums) {
    if (m + 4 > N) break;
    if (auto pair = is_sum_two_primes(N - m, sieve)) {
      return RepWitness{N, pair->first, pair->second, split_into_powers(m, K, conv)};
    }
  }
  return std::nullopt;
}

void check_convention(PowerConvention conv) {
  if (conv.min_exponent > 1) throw DomainError("power convention: minimum exponent must be 0 or 1");
}

}  // namespace

uint64_t RepWitness::power_sum() const {
  uint64_t s = 0;
  for (unsigned e : exponents) s += uint64_t{1} << e;
  return s;
}

std::optional<std::pair<uint64_t, uint64_t>> is_sum_two_primes(uint64_t n, const PrimeSieve& sieve) {
  if (n > sieve.limit()) {
    throw RangeError("is_sum_two_primes: " + std::to_string(n) + " exceeds sieve limit " + std::to_string(sieve.limit()));
  }
  for (uint64_t p : sieve.primes()) {
    if (2 * p > n) break;
    if (sieve.is_prime(n - p)) return std::make_pair(p, n - p);
  }
  return std::nullopt;
}

std::vector<uint64_t> k_powers_sums(unsigned K, uint64_t max, PowerConvention conv) {
  check_convention(conv);
  if (K == 0) throw DomainError("k_powers_sums: K must be positive");
  std::vector<uint64_t> out;
  const uint64_t step = uint64_t{1} << conv.min_exponent;
  for (uint64_t m = step * K; m <= max; m += step) {
    if (representable(m, K, conv)) out.push_back(m);
  }
  return out;
}

std::vector<unsigned> split_into_powers(uint64_t m, unsigned K, PowerConvention conv) {
  check_convention(conv);
  if (!representable(m, K, conv)) {
    throw DomainError(std::to_string(m) + " is not a sum of exactly " + std::to_string(K) + " admissible powers of 2");
  }
  std::map<unsigned, uint64_t, std::greater<>> counts;  // exponent -> multiplicity
  for (unsigned b = 0; b < 64; ++b) {
    if ((m >> b) & 1) counts[b] = 1;
  }
  uint64_t total = static_cast<uint64_t>(std::popcount(m));
  while (total < K) {
    // Halve the largest component that can still be split.
    auto it = counts.begin();
    const unsigned b = it->first;
    if (--it->second == 0) counts.erase(it);
    counts[b - 1] += 2;
    ++total;
  }
  std::vector<unsigned> exps;
  for (const auto& [b, c] : counts) exps.insert(exps.end(), c, b);
  return exps;
}

std::optional<RepWitness> find_representation(uint64_t N, unsigned K, const PrimeSieve& sieve, PowerConvention conv) {
  check_convention(conv);
  if (N % 2 != 0) throw DomainError("find_representation: N must be even");
  if (N > sieve.limit()) throw RangeError("find_representation: N exceeds the sieve limit");
  if (K == 0) throw DomainError("find_representation: K must be positive");
  if (N < (uint64_t{K} << conv.min_exponent) + 4) return std::nullopt;
  return search(N, K, sieve, k_powers_sums(K, N - 4, conv), conv);
}

bool validate_witness(const RepWitness& w, unsigned K, PowerConvention conv) {
  if (w.exponents.size() != K) return false;
  for (unsigned e : w.exponents) {
    if (e < conv.min_exponent || e > 62) return false;
  }
  return trial_division_prime(w.p) && trial_division_prime(w.p_prime) && w.p + w.p_prime + w.power_sum() == w.N;
}

VerifyReport verify_range(uint64_t lo, uint64_t hi, unsigned K, const VerifyOptions& options) {
  check_convention(options.convention);
  const auto start = std::chrono::steady_clock::now();
  if (K == 0) throw DomainError("verify_range: K must be positive");
  if (lo % 2 != 0 || hi % 2 != 0) throw DomainError("verify_range: bounds must be even");
  if (lo < (uint64_t{K} << options.convention.min_exponent) + 4) {
    throw DomainError("verify_range: lo must be at least 2K + 4");
  }
  if (lo > hi) throw DomainError("verify_range: lo exceeds hi");
  if (hi > kVerifyLimit) throw ResourceError("verify_range: hi exceeds the 10^8 sieve budget");

  const PrimeSieve sieve(std::max<uint64_t>(hi, 2));
  const std::vector<uint64_t> sums = k_powers_sums(K, hi, options.convention);

  constexpr uint64_t kBlock = 1 << 14;  // even numbers per block
  const uint64_t count = (hi - lo) / 2 + 1;
  const uint64_t blocks = (count + kBlock - 1) / kBlock;
  std::vector<std::vector<uint64_t>> failures(blocks);
  std::vector<std::vector<RepWitness>> witnesses(blocks);

  detail::for_each_block(blocks, options.threads, [&](uint64_t block) {
    const uint64_t first = lo + 2 * block * kBlock;
    const uint64_t last = std::min(hi, first + 2 * (kBlock - 1));
    for (uint64_t N = first; N <= last; N += 2) {
      auto w = search(N, K, sieve, sums, options.convention);
      if (!w) {
        failures[block].push_back(N);
      } else if (options.collect_witnesses) {
        witnesses[block].push_back(std::move(*w));
      }
    }
  });

  VerifyReport report;
  report.lo = lo;
  report.hi = hi;
  report.K = K;
  for (uint64_t b = 0; b < blocks; ++b) {
    report.failures.insert(report.failures.end(), failures[b].begin(), failures[b].end());
    for (auto& w : witnesses[b]) report.witnesses.push_back(std::move(w));
  }
  report.verified_count = count - report.failures.size();
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

void write_witnesses(std::ostream& os, const std::vector<RepWitness>& witnesses) {
  for (const RepWitness& w : witnesses) {
    os << w.N << ' ' << w.p << ' ' << w.p_prime;
    for (unsigned e : w.exponents) os << ' ' << e;
    os << '\n';
  }
}

}  // namespace linnik
