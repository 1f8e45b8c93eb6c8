// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "okamoto/error.hpp"
#include "okamoto/evaluator.hpp"
#include "support/oracle.hpp"

using namespace okamoto;

namespace {

oracle::Q rational_param(double a) {
  // Nearby rational with denominator 2^20, used for both sides of a comparison.
  return oracle::Q(static_cast<long long>(std::llround(a * 1048576.0)), 1048576);
}

}  // namespace

TEST_CASE("exact_at_rational matches the exact polynomial oracle") {
  for (int trial = 0; trial < 400; ++trial) {
    const int k = static_cast<int>(oracle::integer(0, 4));
    const auto n = static_cast<unsigned>(oracle::integer(1, 7));
    const auto j = static_cast<std::uint64_t>(oracle::integer(0, static_cast<std::int64_t>(pow3(n))));
    const oracle::Q aq = rational_param(oracle::uniform(0.05, 0.95));
    const double a = static_cast<double>(aq);
    const double want = static_cast<double>(oracle::m_exact(k, aq, n, j));
    const double got = exact_at_rational(k, a, n, j);
    CHECK(std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
  }
}

TEST_CASE("endpoint values") {
  for (double a : {0.2, 0.5, 0.7}) {
    CHECK(exact_at_rational(0, a, 3, 0) == 0.0);
    CHECK(exact_at_rational(0, a, 3, 27) == 1.0);
    CHECK(exact_at_rational(2, a, 3, 27) == 0.0);
  }
}

TEST_CASE("F at a = 1/3 is the identity and at a = 1/2 the Cantor function") {
  const double third = 1.0 / 3.0;
  for (std::int64_t q = 2; q < 40; ++q) {
    for (std::int64_t p = 1; p < q; ++p) {
      const auto r = okamoto_F(third, DigitSource::from_rational(p, q), 1e-13);
      CHECK(std::fabs(r.value - static_cast<double>(p) / q) <= r.err_bound + kRoundingSlack);
    }
  }
  CHECK(okamoto_F(0.5, DigitSource::parse("R:1/4"), 1e-14).value == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(okamoto_F(0.5, DigitSource::parse("R:3/4"), 1e-14).value == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("partial_M error bounds are honest against a wide-precision closed form") {
  for (int trial = 0; trial < 200; ++trial) {
    const auto q = oracle::integer(2, 200);
    const auto p = oracle::integer(1, q - 1);
    const auto x = DigitSource::from_rational(p, q);
    const double a = oracle::uniform(0.05, 0.95);
    if (std::fabs(a - 0.5) < 1e-3) continue;
    std::vector<int> pre(x.preperiod().begin(), x.preperiod().end());
    std::vector<int> per(x.period().begin(), x.period().end());
    const double want = static_cast<double>(oracle::f_periodic(oracle::Wide(a), pre, per));
    const auto got = okamoto_F(a, x, 1e-10);
    CHECK(std::fabs(got.value - want) <= got.err_bound + kRoundingSlack);
    CHECK(got.err_bound <= 1e-10);
  }
}

TEST_CASE("functional equations hold on the dyadic-free ternary grid") {
  // M_k(x/3) = a M_k(x) + k M_{k-1}(x);  M_k((1+x)/3) = (1-2a) M_k(x) - 2k M_{k-1}(x) + q1^(k).
  for (int trial = 0; trial < 300; ++trial) {
    const int k = static_cast<int>(oracle::integer(1, 5));
    const auto n = static_cast<unsigned>(oracle::integer(1, 6));
    const auto j = static_cast<std::uint64_t>(oracle::integer(0, static_cast<std::int64_t>(pow3(n))));
    const double a = oracle::uniform(0.05, 0.95);
    const double mk = exact_at_rational(k, a, n, j);
    const double mk1 = exact_at_rational(k - 1, a, n, j);
    const double left = exact_at_rational(k, a, n + 1, j);
    const double mid = exact_at_rational(k, a, n + 1, j + pow3(n));
    const double q1 = k == 1 ? 1.0 : 0.0;
    const double scale = std::max({1.0, std::fabs(mk), std::fabs(mk1)}) * 1e-11;
    CHECK(std::fabs(left - (a * mk + k * mk1)) <= scale);
    CHECK(std::fabs(mid - ((1 - 2 * a) * mk - 2 * k * mk1 + q1)) <= scale);
  }
}

TEST_CASE("property: M_k is odd about (1/2, 0) for k >= 1") {
  for (int trial = 0; trial < 200; ++trial) {
    const int k = static_cast<int>(oracle::integer(1, 6));
    const auto n = static_cast<unsigned>(oracle::integer(1, 8));
    const auto j = static_cast<std::uint64_t>(oracle::integer(0, static_cast<std::int64_t>(pow3(n))));
    const double a = oracle::uniform(0.05, 0.95);
    const double v = exact_at_rational(k, a, n, j);
    const double w = exact_at_rational(k, a, n, pow3(n) - j);
    CHECK(std::fabs(v + w) <= 1e-10 * std::max(1.0, std::fabs(v)));
  }
}

TEST_CASE("grid_values agrees with pointwise evaluation") {
  for (int k : {0, 1, 3}) {
    for (double a : {0.3, 0.5, 0.8}) {
      const auto g = grid_values(k, a, 6);
      REQUIRE(g.size() == pow3(6) + 1);
      for (std::uint64_t j = 0; j <= pow3(6); j += 11)
        CHECK(std::fabs(g[j] - exact_at_rational(k, a, 6, j)) <= 1e-12 * std::max(1.0, std::fabs(g[j])));
    }
  }
  // Threaded path.
  const auto big = grid_values(2, 0.7, 9);
  for (std::uint64_t j = 0; j <= pow3(9); j += 997)
    CHECK(std::fabs(big[j] - exact_at_rational(2, 0.7, 9, j)) <= 1e-11 * std::max(1.0, std::fabs(big[j])));
}

TEST_CASE("F_{1/2} is nondecreasing on the grid") {
  const auto g = grid_values(0, 0.5, 8);
  for (std::size_t j = 1; j < g.size(); ++j) CHECK(g[j] >= g[j - 1]);
}

TEST_CASE("functional-equation evaluation agrees with the series") {
  for (int trial = 0; trial < 60; ++trial) {
    const auto q = oracle::integer(2, 100);
    const auto p = oracle::integer(1, q - 1);
    const auto x = DigitSource::from_rational(p, q);
    const int k = static_cast<int>(oracle::integer(0, 3));
    const double a = oracle::uniform(0.1, 0.9);
    if (std::fabs(a - 0.5) < 0.05) continue;
    const auto s = partial_M(k, a, x, 1e-9);
    const auto f = eval_via_FE(k, a, x, 200);
    CHECK(std::fabs(s.value - f.value) <= s.err_bound + f.err_bound + 1e-9);
  }
  const auto fin = eval_via_FE(2, 0.3, DigitSource::parse("F:1021"), 4);
  CHECK(fin.exact);
  CHECK(fin.value == doctest::Approx(exact_at_rational(2, 0.3, 4, 1 * 27 + 0 * 9 + 2 * 3 + 1)).epsilon(1e-12));
}

TEST_CASE("tail bound decreases and dominates the actual tail") {
  for (int k : {0, 1, 2, 4}) {
    for (double a : {0.2, 0.45, 0.5, 0.7}) {
      double prev = tail_bound(k, a, 0);
      for (std::size_t m = 10; m <= 200; m += 10) {
        const double t = tail_bound(k, a, m);
        CHECK(t <= prev);
        prev = t;
      }
      const auto x = DigitSource::parse("P:|012");
      const double full = partial_M(k, a, x, 1e-12).value;
      const double part = series_partial_sum(k, a, x, 40);
      CHECK(std::fabs(full - part) <= tail_bound(k, a, 40) + 1e-11);
    }
  }
}

TEST_CASE("errors") {
  const auto x = DigitSource::parse("P:|01");
  CHECK_THROWS_AS((void)partial_M(1, 1.2, x, 1e-9), Error);
  CHECK_THROWS_AS((void)partial_M(kMaxOrder + 1, 0.3, x, 1e-9), Error);
  try {
    (void)partial_M(1, 0.9999, x, 1e-300);  // tail ratio too close to 1
    FAIL("expected a tolerance failure");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Tolerance);
  }
  CHECK_THROWS_AS((void)grid_values(0, 0.3, 17), Error);
  CHECK_THROWS_AS((void)exact_at_rational(0, 0.3, 2, 10), Error);
}
