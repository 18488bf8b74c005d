#include <cmath>
#include <numbers>

#include "doctest.h"
#include "linnik/arith.hpp"
#include "linnik/constants.hpp"
#include "linnik/errors.hpp"
#include "oracles.hpp"

using namespace linnik;

namespace {

ConstantEstimate lo(double v) { return ConstantEstimate::exact(v, Direction::lower_bound); }
ConstantEstimate up(double v) { return ConstantEstimate::exact(v, Direction::upper_bound); }

// Odd-prime product with its own sieve, in long double.
long double c0_partial_oracle(uint64_t limit) {
  std::vector<bool> comp(limit + 1, false);
  long double prod = 1.0L;
  for (uint64_t p = 2; p <= limit; ++p) {
    if (comp[p]) continue;
    for (uint64_t q = p * p; q <= limit; q += p) comp[q] = true;
    if (p == 2) continue;
    const long double t = static_cast<long double>(p - 1);
    prod *= 1.0L - 1.0L / (t * t);
  }
  return prod;
}

// Partial sum of kappa(m)(1/m - 1/M) over m < M, exact.
Rational kappa_weighted_oracle(unsigned M) {
  Rational s(0);
  for (unsigned m = 1; m < M; ++m) s += oracle::kappa_direct(m) * Rational(static_cast<int128>(M - m), static_cast<int128>(m) * M);
  return s;
}

}  // namespace

TEST_CASE("compute_c0") {
  const ConstantEstimate small = compute_c0(3);
  CHECK(small.direction == Direction::lower_bound);
  CHECK(small.value == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(small.value <= 0.5);
  CHECK(c0_partial_product(3).value == doctest::Approx(0.75).epsilon(1e-15));

  const ConstantEstimate c = compute_c0(200000);
  CHECK(c.value >= 0.66);
  CHECK(c.value <= 0.6602);
  CHECK(c0_partial_product(200000).value == doctest::Approx(0.6601).epsilon(2e-4));
  CHECK(std::abs(c0_partial_product(200000).value - static_cast<double>(c0_partial_oracle(200000))) < 1e-12);

  const ConstantEstimate big = c0_partial_product(1000000);
  CHECK(std::abs(big.value - static_cast<double>(c0_partial_oracle(1000000))) < 1e-12);
  CHECK(std::abs(big.value - 0.660162) < 1e-6);
  CHECK(compute_c0(1000000).value <= static_cast<double>(c0_partial_oracle(1000000)) * (1.0 - 1e-6));
}

TEST_CASE("build_kappa_table") {
  const KappaTable t = build_kappa_table(25);
  CHECK(t.at(1) == Rational(1));
  CHECK(t.at(2) == Rational(1));
  CHECK(t.at(4) == Rational(2, 3));
  for (unsigned m = 1; m < 25; ++m) {
    REQUIRE(t.at(m) == oracle::kappa_direct(m));
    Rational s(0);
    for (unsigned e = 1; e <= m; ++e) {
      if (m % e == 0) s += t.at(e);
    }
    REQUIRE(s == h_function((uint64_t{1} << m) - 1));
  }
  CHECK_THROWS_AS(build_kappa_table(65), RangeError);
}

TEST_CASE("c2_upper") {
  const ConstantEstimate partial = c2_upper(20, 0.0);
  CHECK(partial.value == doctest::Approx(1.6659).epsilon(1e-4));
  CHECK(partial.value >= kappa_weighted_oracle(20).to_double());

  const ConstantEstimate total = c2_upper(20, 2.744);
  CHECK(total.direction == Direction::upper_bound);
  CHECK(total.value == doctest::Approx(2.2141).epsilon(1e-4));
  CHECK(total.value >= 2.2141);

  const double m10 = kappa_weighted_oracle(10).to_double() + 2.744 * (1.0 + std::log(10.0)) / 10.0;
  CHECK(c2_upper(10, 2.744).value == doctest::Approx(m10).epsilon(1e-12));
  CHECK(m10 > total.value);

  CHECK_THROWS_AS(c2_upper(8, 2.744), DomainError);
  CHECK_THROWS_AS(c2_upper(20, -1.0), DomainError);

  double prev = c2_upper(9, 2.744).value;
  for (unsigned M = 10; M <= 24; ++M) {
    const double cur = c2_upper(M, 2.744).value;
    CHECK_MESSAGE(cur <= prev, "c2_upper increases at M=" << M);
    prev = cur;
  }
}

TEST_CASE("implied tail coefficient") {
  const ConstantEstimate t = implied_tail_coefficient(compute_c0(200000));
  CHECK(t.direction == Direction::upper_bound);
  CHECK(t.value >= std::exp(0.5772156649015329) / 0.6601620668);
  CHECK(t.value < 2.744);
}

TEST_CASE("c2_lower") {
  CHECK(c2_lower(1).value == doctest::Approx(1.0));
  CHECK(c2_lower(1).value <= 1.0);

  long double s = 0.0L;
  for (uint64_t d = 1; d <= 100; d += 2) s += static_cast<long double>(oracle::k_of(d).to_double()) / oracle::order_of_two(d);
  const ConstantEstimate v100 = c2_lower(100);
  CHECK(v100.value == doctest::Approx(static_cast<double>(s)).epsilon(1e-13));
  CHECK(v100.value > 1.0);
  CHECK(v100.value < 1.9327);

  const ConstantEstimate v = c2_lower(10000);
  CHECK(v.direction == Direction::lower_bound);
  CHECK(v.value >= 1.9326);
  CHECK(v.value < 1.9327);

  double prev = 0.0;
  for (uint64_t d : {1, 3, 15, 100, 500, 2000, 10000}) {
    const double cur = c2_lower(d).value;
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("minor_arc_constant") {
  const ConstantEstimate m = minor_arc_constant(lo(0.66), 7.8342, c2_upper(20, 2.744));
  CHECK(m.direction == Direction::upper_bound);
  CHECK(m.value <= 13.968);
  CHECK(m.value >= 13.967);

  CHECK(minor_arc_constant(lo(1.0), 2.0, up(123.0)).value == doctest::Approx(std::numbers::ln2).epsilon(1e-14));

  const long double expected = (7.8342L - 2.0L) * 1.992L + std::log(2.0L) / 0.66L;
  const ConstantEstimate e = minor_arc_constant(lo(0.66), 7.8342, up(1.992));
  CHECK(e.value == doctest::Approx(static_cast<double>(expected)).epsilon(1e-13));
  CHECK(e.value >= static_cast<double>(expected) - 1e-15);
  CHECK(e.value == doctest::Approx(12.672).epsilon(1e-4));

  CHECK_THROWS_AS(minor_arc_constant(lo(0.0), 7.8342, up(2.0)), DomainError);
  CHECK_THROWS_AS(minor_arc_constant(up(0.66), 7.8342, up(2.0)), DomainError);
  CHECK_THROWS_AS(minor_arc_constant(lo(0.66), 7.8342, lo(2.0)), DomainError);
}

TEST_CASE("H counts") {
  CHECK(H_bruteforce(3, 0, 2) == 2);
  CHECK(H_bruteforce(5, 1, 1) == 1);
  CHECK(H_bruteforce(3, 0, 1) == 0);
  CHECK(H_closed_form(3, true, 2) == 2);
  CHECK(H_closed_form(3, false, 1) == 1);
  CHECK(H_closed_form(5, true, 7) == 3276);
  CHECK(H_bruteforce(5, 0, 7) == 3276);

  CHECK_THROWS_AS(H_closed_form(7, true, 3), DomainError);  // ord_7(2) = 3
  CHECK_THROWS_AS(H_bruteforce(3, 3, 2), DomainError);
  CHECK_THROWS_AS(H_bruteforce(63, 0, 11), ResourceError);  // 6^11 > 10^8 tuples

  for (uint64_t d : {3, 5}) {
    for (unsigned K = 1; K <= 8; ++K) {
      REQUIRE(H_closed_form(d, true, K) == H_bruteforce(d, 0, K));
      for (uint64_t r = 1; r < d; ++r) REQUIRE(H_closed_form(d, false, K) == H_bruteforce(d, r, K));
    }
  }

  for (uint64_t d : {3, 5, 7, 9, 15, 21}) {
    const uint64_t eps = mult_order2(d);
    for (unsigned K = 1; K <= 5; ++K) {
      const std::vector<uint128> dist = H_distribution(d, K);
      uint64_t total = 0;
      for (uint64_t r = 0; r < d; ++r) {
        const uint64_t b = H_bruteforce(d, r, K);
        REQUIRE(static_cast<uint64_t>(dist[r]) == b);
        total += b;
      }
      uint64_t expect = 1;
      for (unsigned i = 0; i < K; ++i) expect *= eps;
      REQUIRE(total == expect);
    }
  }
}

TEST_CASE("major_arc_constant") {
  const ConstantEstimate m = major_arc_constant(5, 7);
  CHECK(m.direction == Direction::lower_bound);
  CHECK(m.value >= 2.7895);
  CHECK(m.value < 2.7896);
  const ConstantEstimate one = major_arc_constant(1, 9);
  CHECK(one.value <= 2.0);
  CHECK(one.value + 2.0 * one.abs_error >= 2.0);
  CHECK(major_arc_constant(21, 12).value >= 2.96169);
  CHECK_THROWS_AS(major_arc_constant(5, 6), DomainError);
  CHECK_THROWS_AS(major_arc_constant(4, 7), DomainError);

  // Consecutive K can share the same exact value; compare up to the recorded rounding.
  ConstantEstimate prev = major_arc_constant(5, 7);
  for (unsigned K = 8; K <= 13; ++K) {
    const ConstantEstimate cur = major_arc_constant(5, K);
    CHECK_MESSAGE(cur.value >= prev.value - cur.abs_error - prev.abs_error, "decrease at K=" << K);
    prev = cur;
  }

  // D = 3 by hand: 2 (1 + min_N H(3;N,K)/2^K), and the minimum is the d | N class for odd K.
  const double h3 = static_cast<double>(H_closed_form(3, true, 7)) / 128.0;
  CHECK(major_arc_constant(3, 7).value == doctest::Approx(2.0 * (1.0 + h3)).epsilon(1e-14));
}

TEST_CASE("gallagher_sum") {
  CHECK(gallagher_sum(1.0, 100) == doctest::Approx(1.0));
  CHECK(gallagher_sum(2.0, 100) == doctest::Approx(1.75));
  CHECK(gallagher_sum(6.0, 100000) >= gallagher_sum(2.0, 100000));
  CHECK_THROWS_AS(gallagher_sum(0.5, 100), DomainError);
}

TEST_CASE("presets") {
  const ConfigPreset p = ConfigPreset::paper();
  CHECK(p.D == 5);
  CHECK(p.C1 == 7.8342);
  const ConfigPreset e = ConfigPreset::by_name("elsholtz");
  CHECK(e.D == 21);
  REQUIRE(e.C2_upper_override.has_value());
  CHECK(*e.C2_upper_override == 1.992);
}
