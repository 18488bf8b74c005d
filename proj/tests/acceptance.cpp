// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>

#include "linnik/arith.hpp"
#include "linnik/constants.hpp"
#include "linnik/expsum.hpp"
#include "linnik/goldbach.hpp"
#include "linnik/ksolver.hpp"
#include "oracles.hpp"

using namespace linnik;

namespace {

// Tolerances and limits.
constexpr double kFourPlaces = 1e-4;      // width of a 4-decimal truncation bucket
constexpr double kConstTol = 5e-4;        // criteria 2 and 3
constexpr double kTableTol = 0x1p-40;     // table vs direct sum
constexpr double kSymTol = 0x1p-48;       // symmetry and zero-sum
constexpr double kConvexSlack = 1e-12;    // log-convexity
constexpr double kMargin = 1e-8;          // exponent margin
constexpr double kSeconds1 = 1.0, kSeconds2 = 1.0, kSeconds3 = 10.0, kSecondsPerF = 5.0, kSeconds12 = 60.0;
constexpr uint64_t kSupTrials = 10000;
constexpr uint64_t kMcSamples = 1000000;
constexpr uint64_t kMcSeed = 20011;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

int failures = 0;

void criterion(int id, const std::function<void(Outcome&)>& body) {
  Outcome o;
  const auto t0 = Clock::now();
  try {
    body(o);
  } catch (const std::exception& ex) {
    o.pass = false;
    o.detail << " [exception: " << ex.what() << "]";
  }
  const double t = seconds_since(t0);
  if (!o.pass) ++failures;
  std::printf("%s %2d (%.3f s)%s\n", o.pass ? "PASS" : "FAIL", id, t, o.detail.str().c_str());
  std::fflush(stdout);
}

unsigned worker_threads() { return std::max(1u, std::thread::hardware_concurrency()); }

const ExpSumTable& table16() {
  static const ExpSumTable t = build_table(16);
  return t;
}

}  // namespace

int main() {
  criterion(1, [](Outcome& o) {
    const auto t0 = Clock::now();
    const ConstantEstimate partial = c0_partial_product(200000);
    const ConstantEstimate bound = compute_c0(200000);
    const double t = seconds_since(t0);
    o.detail << " partial=" << partial.value << " bound=" << bound.value;
    // Truncated to four places, as in 0.6601...
    o.require(partial.value >= 0.6601 && partial.value < 0.6601 + kFourPlaces, "partial product is 0.6601...");
    o.require(bound.value >= 0.66, "lower bound >= 0.66");
    o.require(bound.direction == Direction::lower_bound, "direction");
    o.require(t < kSeconds1, "runtime < 1 s");
  });

  criterion(2, [](Outcome& o) {
    const auto t0 = Clock::now();
    const ConstantEstimate partial = c2_upper(20, 0.0);
    const ConstantEstimate total = c2_upper(20, kDefaultTailCoefficient);
    const double t = seconds_since(t0);
    o.detail << " partial=" << partial.value << " C2<=" << total.value;
    o.require(std::abs(partial.value - 1.6659) <= kConstTol, "partial sum 1.6659");
    o.require(std::abs(total.value - 2.2141) <= kConstTol, "C2 upper 2.2141");
    o.require(total.direction == Direction::upper_bound, "direction");
    o.require(t < kSeconds2, "runtime < 1 s");
  });

  criterion(3, [](Outcome& o) {
    const auto t0 = Clock::now();
    const ConstantEstimate lower = c2_lower(10000);
    const double t = seconds_since(t0);
    o.detail << " C2>=" << lower.value;
    o.require(std::abs(lower.value - 1.9326) <= kConstTol, "C2 lower 1.9326");
    o.require(lower.direction == Direction::lower_bound, "direction");
    o.require(t < kSeconds3, "runtime < 10 s");
  });

  criterion(4, [](Outcome& o) {
    const ConstantEstimate m = minor_arc_constant(compute_c0(200000), kChenC1, c2_upper(20, kDefaultTailCoefficient));
    o.detail << " minor=" << m.value;
    o.require(m.direction == Direction::upper_bound, "direction");
    o.require(m.value <= 13.968, "minor <= 13.968");
  });

  criterion(5, [](Outcome& o) {
    const ConstantEstimate major = major_arc_constant(5, 7);
    const TheoremReport e = full_report(ConfigPreset::elsholtz(), false, ReportOptions{}, table16());
    o.detail << " major(5,7)=" << major.value << " elsholtz K_min=" << e.K_min;
    o.require(major.value >= 2.7895, "major(5,7) >= 2.7895");
    o.require(e.K_min == 12, "elsholtz K_min = 12");
  });

  criterion(6, [](Outcome& o) {
    auto t0 = Clock::now();
    const ExpSumTable& table = table16();
    const ExponentResult u = exponent_E(kLambdaUnconditional, kXiUnconditional, table);
    const double tu = seconds_since(t0);
    t0 = Clock::now();
    const ExponentResult g = exponent_E(kLambdaGrh, kXiGrh, table);
    const double tg = seconds_since(t0);
    char buf[160];
    std::snprintf(buf, sizeof buf, " E(0.863665)=%.10f E(0.722428)=%.10f", u.E.value, g.E.value);
    o.detail << buf;
    o.require(u.F.direction == Direction::upper_bound && u.E.direction == Direction::lower_bound, "rounding directions");
    o.require(u.E.value > 109.0 / 154.0 + kMargin, "E(0.863665) > 109/154 + 1e-8");
    o.require(g.E.value > 0.5 + kMargin, "E(0.722428) > 1/2 + 1e-8");
    o.require(tu < kSecondsPerF && tg < kSecondsPerF, "runtime < 5 s per F");
  });

  criterion(7, [](Outcome& o) {
    const auto scan = [](double minor, double major, double lambda) {
      for (int K = 2; K < 500; ++K) {
        if (minor * std::pow(lambda, K - 2) < major) return K;
      }
      return -1;
    };
    const int ku = solve_k(13.968, 2.7895, kLambdaUnconditional, 2);
    const int kg = solve_k(13.968, 2.7895, kLambdaGrh, 2);
    o.detail << " K=" << ku << "," << kg;
    o.require(ku == 13 && ku == scan(13.968, 2.7895, kLambdaUnconditional), "K = 13");
    o.require(kg == 7 && kg == scan(13.968, 2.7895, kLambdaGrh), "K = 7");
  });

  criterion(8, [](Outcome& o) {
    for (unsigned h : {4u, 8u, 12u, 16u}) {
      const ExpSumTable t = h == 16 ? table16() : build_table(h);
      const uint64_t n = t.size();
      long double sum = 0.0L;
      bool sym = true;
      for (uint64_t r = 0; r < n; ++r) {
        sum += t[r];
        if (r > 0 && std::abs(t[n - r] - t[r]) > kSymTol) sym = false;
      }
      o.require(std::abs(static_cast<double>(sum)) <= static_cast<double>(n) * h * kSymTol, "zero-sum h=" + std::to_string(h));
      o.require(sym, "symmetry h=" + std::to_string(h));
    }
    double worst = 0.0;
    for (unsigned h = 1; h <= 12; ++h) {
      const ExpSumTable t = build_table(h);
      for (uint64_t r = 0; r < t.size(); ++r) {
        worst = std::max(worst, std::abs(t[r] - static_cast<double>(oracle::re_t_direct(r, h))));
      }
    }
    o.detail << " table-vs-direct=" << worst;
    o.require(worst <= kTableTol, "table vs direct within 2^-40");
    bool convex = true;
    for (int i = 2; i <= 30; ++i) {
      for (int j = i + 1; j <= 30; ++j) {
        const double x1 = 0.1 * i, x2 = 0.1 * j;
        const double mid = std::log(big_f(0.5 * (x1 + x2), table16()).value);
        const double chord = 0.5 * (std::log(big_f(x1, table16()).value) + std::log(big_f(x2, table16()).value));
        if (mid > chord + kConvexSlack) convex = false;
      }
    }
    o.require(convex, "log F convex on [0.2, 3.0]");
    for (unsigned h : {4u, 8u, 12u}) {
      const SupCheckResult s = sup_check(build_table(h), 1.0, kSupTrials, kMcSeed + h, worker_threads());
      o.require(s.passed && s.trials == kSupTrials, "sup_check h=" + std::to_string(h));
    }
  });

  criterion(9, [](Outcome& o) {
    for (uint64_t d : {3u, 5u}) {
      const uint64_t eps = mult_order2(d);
      for (unsigned K = 1; K <= 8; ++K) {
        uint64_t total = 0, expect = 1;
        for (uint64_t r = 0; r < d; ++r) {
          const uint64_t brute = H_bruteforce(d, r, K);
          total += brute;
          o.require(H_closed_form(d, r == 0, K) == brute,
                    "closed form d=" + std::to_string(d) + " K=" + std::to_string(K) + " r=" + std::to_string(r));
        }
        for (unsigned i = 0; i < K; ++i) expect *= eps;
        o.require(total == expect, "conservation d=" + std::to_string(d) + " K=" + std::to_string(K));
      }
    }
  });

  criterion(10, [](Outcome& o) {
    const KappaTable t = build_kappa_table(20);
    for (unsigned m = 1; m <= 19; ++m) {
      Rational s(0);
      for (unsigned e = 1; e <= m; ++e) {
        if (m % e == 0) s += t.at(e);
      }
      o.require(s == h_function((uint64_t{1} << m) - 1), "m=" + std::to_string(m));
    }
  });

  criterion(11, [](Outcome& o) {
    const XiOptimum opt = optimize_xi(0.8, table16());
    MeasureBoundParams p;
    p.lambda = 0.8;
    p.xi = opt.xi_star;
    p.h = 16;
    p.L = 24;
    p.varpi = 0.01;
    const double bound = explicit_measure_bound(p, table16());
    const MonteCarloEstimate mc = measure_mc(0.8, 24, kMcSamples, kMcSeed, worker_threads());
    o.detail << " mc=" << mc.estimate << " stderr=" << mc.std_error << " bound=" << bound << " xi=" << opt.xi_star;
    o.require(mc.samples == kMcSamples, "sample count");
    o.require(mc.estimate <= bound + 4 * mc.std_error, "estimate <= bound + 4 stderr");
  });

  criterion(12, [](Outcome& o) {
    const auto t0 = Clock::now();
    VerifyOptions opts;
    opts.threads = worker_threads();
    const VerifyReport r13 = verify_range(60, 1000000, 13, opts);
    const VerifyReport r7 = verify_range(60, 1000000, 7, opts);
    const double t = seconds_since(t0);
    const uint64_t expected = (1000000 - 60) / 2 + 1;
    o.detail << " K=13 failures=" << r13.failures.size() << " K=7 failures=" << r7.failures.size();
    o.require(r13.failures.empty() && r13.verified_count == expected, "K=13 range");
    o.require(r7.failures.empty() && r7.verified_count == expected, "K=7 range");
    o.require(t < kSeconds12, "runtime < 60 s");
  });

  std::printf("%s: %d failing criteria\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
