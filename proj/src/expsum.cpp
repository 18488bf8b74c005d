#include "linnik/expsum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "linnik/errors.hpp"
#include "parallel.hpp"

namespace linnik {
namespace {

constexpr double kU = std::numeric_limits<double>::epsilon();
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr unsigned kMaxTSumLength = 1'000'000;

// e(x) for x in [0, 1), reduced to [-1/2, 1/2) first.
std::complex<double> unit(double x) {
  const double y = x >= 0.5 ? x - 1.0 : x;
  return {std::cos(kTwoPi * y), std::sin(kTwoPi * y)};
}

// cos(2 pi r / N) for r in [0, N), exactly symmetric under r -> N - r.
std::vector<double> cosine_table(uint64_t N) {
  std::vector<double> cs(N);
  for (uint64_t r = 0; r <= N / 2; ++r) {
    const double v = std::cos(kTwoPi * static_cast<double>(r) / static_cast<double>(N));
    cs[r] = v;
    if (r != 0) cs[N - r] = v;
  }
  return cs;
}

std::vector<double> sine_table(uint64_t N) {
  std::vector<double> sn(N);
  for (uint64_t r = 0; r <= N / 2; ++r) {
    const double v = std::sin(kTwoPi * static_cast<double>(r) / static_cast<double>(N));
    sn[r] = v;
    if (r != 0) sn[N - r] = -v;
  }
  return sn;
}

void check_xi(double xi, unsigned h) {
  if (!std::isfinite(xi) || xi < 0.0 || xi > kMaxXi) {
    throw DomainError("xi must lie in [0, " + std::to_string(kMaxXi) + "], got " + std::to_string(xi));
  }
  if (xi * h > 700.0) throw DomainError("exp(xi h) would overflow");
}

// Neumaier's compensated summation.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace

std::complex<double> t_sum(double alpha, unsigned L) {
  if (L > kMaxTSumLength) throw DomainError("t_sum: L must be at most 10^6");
  if (!std::isfinite(alpha)) throw DomainError("t_sum: alpha must be finite");
  double x = alpha - std::floor(alpha);
  std::complex<double> total{0.0, 0.0};
  for (unsigned n = 0; n < L; ++n) {
    total += unit(x);
    x *= 2.0;
    if (x >= 1.0) x -= 1.0;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Table

ExpSumTable::ExpSumTable(unsigned h, std::vector<double> values) : h_(h), c_(std::move(values)) {
  if (h == 0 || h > kMaxTableH) throw DomainError("ExpSumTable: h out of range");
  if (c_.size() != (size_t{1} << h)) throw DomainError("ExpSumTable: expected 2^h values");
}

double ExpSumTable::entry_error() const {
  // Each cosine is off by at most ~(2 pi + 1) ulp; summing h of them adds
  // at most h roundings of magnitude <= h.
  const double hh = static_cast<double>(h_);
  return hh * (8.0 + hh) * kU;
}

ExpSumTable build_table(unsigned h) {
  if (h == 0) throw DomainError("build_table: h must be positive");
  if (h > kMaxTableH) throw ResourceError("build_table: h = " + std::to_string(h) + " exceeds the memory cap of 26");
  const uint64_t N = uint64_t{1} << h;
  const uint64_t mask = N - 1;
  const std::vector<double> cs = cosine_table(N);
  std::vector<double> c(N);
  for (uint64_t r = 0; r < N; ++r) {
    double acc = 0.0;
    for (unsigned n = 0; n < h; ++n) acc += cs[(r << n) & mask];
    c[r] = acc;
  }
  return {h, std::move(c)};
}

namespace {

constexpr std::array<char, 8> kCacheMagic{'L', 'N', 'K', 'E', 'X', 'P', 'S', 'M'};
constexpr uint32_t kCacheVersion = 1;

void put_u32(std::ostream& os, uint32_t v) {
  for (int i = 0; i < 4; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::ostream& os, uint64_t v) {
  for (int i = 0; i < 8; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}

bool get_u64(std::istream& is, uint64_t& v, int bytes = 8) {
  v = 0;
  for (int i = 0; i < bytes; ++i) {
    const int ch = is.get();
    if (ch == std::char_traits<char>::eof()) return false;
    v |= static_cast<uint64_t>(static_cast<unsigned char>(ch)) << (8 * i);
  }
  return true;
}

}  // namespace

void save_table(const ExpSumTable& table, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open table cache for writing: " + path.string());
  os.write(kCacheMagic.data(), kCacheMagic.size());
  put_u32(os, kCacheVersion);
  put_u32(os, table.h());
  for (double v : table.values()) {
    uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    put_u64(os, bits);
  }
  if (!os) throw std::runtime_error("failed writing table cache: " + path.string());
}

std::optional<ExpSumTable> load_table(const std::filesystem::path& path, unsigned h) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return std::nullopt;
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), magic.size()) || magic != kCacheMagic) return std::nullopt;
  uint64_t version = 0, stored_h = 0;
  if (!get_u64(is, version, 4) || version != kCacheVersion) return std::nullopt;
  if (!get_u64(is, stored_h, 4) || stored_h != h || h == 0 || h > kMaxTableH) return std::nullopt;
  std::vector<double> values(size_t{1} << h);
  for (double& v : values) {
    uint64_t bits;
    if (!get_u64(is, bits)) return std::nullopt;
    std::memcpy(&v, &bits, sizeof v);
  }
  if (is.peek() != std::char_traits<char>::eof()) return std::nullopt;
  return ExpSumTable(h, std::move(values));
}

ExpSumTable load_or_build_table(const std::optional<std::filesystem::path>& cache, unsigned h) {
  if (cache) {
    if (auto cached = load_table(*cache, h)) return std::move(*cached);
  }
  ExpSumTable table = build_table(h);
  if (cache) save_table(table, *cache);
  return table;
}

// ---------------------------------------------------------------------------
// F and E

ConstantEstimate big_f(double xi, const ExpSumTable& table) {
  check_xi(xi, table.h());
  CompensatedSum sum;
  for (double c : table.values()) sum.add(std::exp(xi * c));
  const double n = static_cast<double>(table.size());
  const double F = sum.value() / n;  // division by 2^h is exact
  // Per-term relative error from the table entry, the product xi*c, and
  // exp itself; then the compensated sum of positive terms.
  const double arg_error = xi * (table.entry_error() + static_cast<double>(table.h()) * kU);
  const double rel = std::expm1(arg_error) + 2.0 * kU + 3.0 * kU + n * kU * kU;
  const double err = F * rel * (1.0 + 8.0 * kU);
  return {round_up(F, err), err, Direction::upper_bound};
}

ExponentResult exponent_E(double lambda, double xi, const ExpSumTable& table) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("exponent_E: lambda must lie in (0, 1]");
  ExponentResult out;
  out.lambda = lambda;
  out.xi = xi;
  out.h = table.h();
  out.F = big_f(xi, table);
  out.logF = log(Tracked(out.F.value)).upper();
  const Tracked gain = Tracked(xi) * Tracked(lambda) / ln2();
  const Tracked cost = Tracked(out.logF.value) / (Tracked(static_cast<double>(table.h())) * ln2());
  out.E = (gain - cost).lower();
  return out;
}

XiOptimum optimize_xi(double lambda, const ExpSumTable& table, double tol) {
  if (!(tol >= std::ldexp(1.0, -40))) throw DomainError("optimize_xi: tol must be at least 2^-40");
  const double cap = std::min(kMaxXi, 700.0 / table.h());
  auto value = [&](double xi) { return exponent_E(lambda, xi, table).E.value; };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = cap;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = value(c), fd = value(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = value(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = value(d);
    }
  }
  // The bracket may have collapsed onto an endpoint; the cap is a legitimate
  // maximiser when E is still increasing there.
  XiOptimum best{0.5 * (a + b), exponent_E(lambda, 0.5 * (a + b), table)};
  for (double candidate : {a, b, cap}) {
    if (candidate <= 0.0) continue;
    ExponentResult r = exponent_E(lambda, candidate, table);
    if (r.E.value > best.result.E.value) best = {candidate, r};
  }
  return best;
}

// ---------------------------------------------------------------------------
// Measure bounds

uint64_t MeasureBoundParams::rotations() const {
  return 1 + static_cast<uint64_t>(std::floor(kTwoPi / varpi));
}

void MeasureBoundParams::validate() const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw DomainError("MeasureBoundParams: lambda must lie in [0, 1]");
  if (!(xi > 0.0 && xi <= kMaxXi)) throw DomainError("MeasureBoundParams: xi must lie in (0, 16]");
  if (h == 0 || L == 0) throw DomainError("MeasureBoundParams: h and L must be positive");
  if (!(varpi > 0.0 && varpi < 1.0)) throw DomainError("MeasureBoundParams: varpi must lie in (0, 1)");
}

double explicit_measure_log_bound(const MeasureBoundParams& params, const ExpSumTable& table) {
  params.validate();
  if (params.h != table.h()) throw DomainError("explicit_measure_bound: params.h does not match the table");
  const unsigned windows = params.L / params.h;
  const unsigned residual = params.L % params.h;
  const ConstantEstimate F = big_f(params.xi, table);
  const ConstantEstimate logF = log(Tracked(F.value)).upper();
  const Tracked xi(params.xi);
  Tracked total = log(Tracked(static_cast<double>(params.rotations())));
  total += xi * Tracked(static_cast<double>(residual));
  total = total - xi * (Tracked(1.0) - Tracked(params.varpi)) * Tracked(params.lambda) *
                      Tracked(static_cast<double>(params.L));
  total += Tracked(static_cast<double>(windows)) * Tracked(logF.value);
  return total.upper().value;
}

double explicit_measure_bound(const MeasureBoundParams& params, const ExpSumTable& table) {
  const double log_bound = explicit_measure_log_bound(params, table);
  if (log_bound > 709.0) return std::numeric_limits<double>::infinity();
  const Tracked bound = exp(Tracked(log_bound));
  return bound.upper().value;
}

MonteCarloEstimate measure_mc(double lambda, unsigned L, uint64_t samples, uint64_t seed, unsigned threads) {
  if (samples < 1000) throw DomainError("measure_mc: need at least 1000 samples");
  if (L == 0 || L > kMaxTSumLength) throw DomainError("measure_mc: L out of range");
  constexpr uint64_t kBlock = 1 << 16;
  const uint64_t blocks = (samples + kBlock - 1) / kBlock;
  const double threshold = lambda * static_cast<double>(L);
  const size_t words = (L + 63) / 64 + 1;
  std::vector<uint64_t> hits(blocks, 0);

  detail::for_each_block(blocks, threads, [&](uint64_t block) {
    std::mt19937_64 rng(detail::splitmix64(seed ^ detail::splitmix64(block)));
    const uint64_t begin = block * kBlock;
    const uint64_t end = std::min(samples, begin + kBlock);
    std::vector<uint64_t> bits(words);
    uint64_t count = 0;
    for (uint64_t s = begin; s < end; ++s) {
      // alpha is the binary fraction 0.b0 b1 b2 ...; frac(2^n alpha) is read
      // from the 53 bits starting at position n.
      for (auto& w : bits) w = rng();
      std::complex<double> total{0.0, 0.0};
      for (unsigned n = 0; n < L; ++n) {
        const size_t i = n / 64;
        const unsigned off = n % 64;
        const uint64_t window = off == 0 ? bits[i] : (bits[i] << off) | (bits[i + 1] >> (64 - off));
        total += unit(static_cast<double>(window >> 11) * 0x1p-53);
      }
      if (std::abs(total) >= threshold) ++count;
    }
    hits[block] = count;
  });

  MonteCarloEstimate out;
  out.samples = samples;
  for (uint64_t h : hits) out.hits += h;
  const double p = static_cast<double>(out.hits) / static_cast<double>(samples);
  out.estimate = p;
  out.std_error = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
  return out;
}

// ---------------------------------------------------------------------------
// Supremum check

namespace {

struct RootTable {
  std::vector<double> cs, sn;
  explicit RootTable(uint64_t N) : cs(cosine_table(N)), sn(sine_table(N)) {}
};

double shifted_average_with(const ExpSumTable& table, const RootTable& roots, double xi, double beta, double phase) {
  const unsigned h = table.h();
  const uint64_t N = table.size();
  const uint64_t mask = N - 1;
  const std::complex<double> rho = unit(phase - std::floor(phase));
  // q_n = rho e(beta 2^n / 2^h); then Re(rho T_h((beta + r)/2^h)) =
  // sum_n Re(q_n e(r 2^n / 2^h)).
  std::vector<double> qre(h), qim(h);
  for (unsigned n = 0; n < h; ++n) {
    const double x = std::ldexp(beta, static_cast<int>(n) - static_cast<int>(h));
    const std::complex<double> q = rho * unit(x - std::floor(x));
    qre[n] = q.real();
    qim[n] = q.imag();
  }
  CompensatedSum sum;
  for (uint64_t r = 0; r < N; ++r) {
    double re = 0.0;
    for (unsigned n = 0; n < h; ++n) {
      const uint64_t k = (r << n) & mask;
      re += qre[n] * roots.cs[k] - qim[n] * roots.sn[k];
    }
    sum.add(std::exp(xi * re));
  }
  return sum.value() / static_cast<double>(N);
}

}  // namespace

double shifted_average(const ExpSumTable& table, double xi, double beta, double phase) {
  check_xi(xi, table.h());
  return shifted_average_with(table, RootTable(table.size()), xi, beta, phase);
}

SupCheckResult sup_check(const ExpSumTable& table, double xi, uint64_t trials, uint64_t seed, unsigned threads) {
  if (trials == 0) throw DomainError("sup_check: need at least one trial");
  check_xi(xi, table.h());
  const RootTable roots(table.size());
  const double F = big_f(xi, table).value;
  // Different evaluation order than big_f; allow a few hundred ulps.
  const double tolerance = F * (1e-12 + 64.0 * xi * table.h() * kU);

  std::mt19937_64 rng(seed);
  std::vector<double> betas(trials), phases(trials), averages(trials);
  for (uint64_t t = 0; t < trials; ++t) {
    betas[t] = static_cast<double>(rng() >> 11) * 0x1p-53;
    phases[t] = static_cast<double>(rng() >> 11) * 0x1p-53;
  }
  constexpr uint64_t kBlock = 64;
  detail::for_each_block((trials + kBlock - 1) / kBlock, threads, [&](uint64_t block) {
    const uint64_t end = std::min(trials, (block + 1) * kBlock);
    for (uint64_t t = block * kBlock; t < end; ++t) {
      averages[t] = shifted_average_with(table, roots, xi, betas[t], phases[t]);
    }
  });

  SupCheckResult out;
  out.trials = trials;
  for (uint64_t t = 0; t < trials; ++t) {
    const double ratio = averages[t] / F;
    if (ratio > out.max_ratio) {
      out.max_ratio = ratio;
      out.worst_beta = betas[t];
      out.worst_phase = phases[t];
    }
    if (averages[t] > F + tolerance) out.passed = false;
  }
  return out;
}

}  // namespace linnik
