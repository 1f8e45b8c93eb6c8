// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "okamoto/error.hpp"
#include "okamoto/evaluator.hpp"
#include "okamoto/increments.hpp"
#include "support/oracle.hpp"

using namespace okamoto;

TEST_CASE("delta_general matches endpoint differences") {
  for (int trial = 0; trial < 400; ++trial) {
    const int k = static_cast<int>(oracle::integer(0, 5));
    const auto n = static_cast<unsigned>(oracle::integer(1, 9));
    const auto j = static_cast<std::uint64_t>(oracle::integer(0, static_cast<std::int64_t>(pow3(n)) - 1));
    double a = oracle::uniform(0.05, 0.95);
    if (std::fabs(a - 0.5) < 1e-2) a = 0.4;
    const double want = exact_at_rational(k, a, n, j + 1) - exact_at_rational(k, a, n, j);
    const auto got = delta_general(k, a, TernaryInterval::make(n, j));
    const double scale = std::max(std::fabs(exact_at_rational(k, a, n, j)), 1.0);
    CHECK(std::fabs(got.delta - want) <= 1e-10 * scale);
  }
}

TEST_CASE("delta_general stays finite in log form where doubles underflow") {
  const auto v = delta_general(3, 0.49995, TernaryInterval::with_ones(4000, 10));
  CHECK(std::isfinite(v.log_magnitude));
  CHECK(v.delta == 0.0);  // underflows; the log form carries the information
  CHECK(v.sign != 0);
}

TEST_CASE("Leibniz sum in double agrees with the exact rational sum") {
  for (int trial = 0; trial < 200; ++trial) {
    const int k = static_cast<int>(oracle::integer(0, 5));
    const auto n = static_cast<unsigned>(oracle::integer(0, 20));
    const auto l = static_cast<unsigned>(oracle::integer(0, n));
    const Rational aq(oracle::integer(1, 99), 100);
    const double exact = static_cast<double>(delta_leibniz_direct(k, aq, n, l));
    const double approx = delta_leibniz_direct(k, static_cast<double>(aq), n, l);
    CHECK(std::fabs(exact - approx) <= 1e-12 * std::max(1.0, std::fabs(exact)));
  }
}

TEST_CASE("P_k three ways") {
  for (int trial = 0; trial < 300; ++trial) {
    const int k = static_cast<int>(oracle::integer(0, 8));
    const auto n = static_cast<unsigned>(oracle::integer(0, 40));
    const auto l = static_cast<unsigned>(oracle::integer(0, n));
    const double a = oracle::uniform(0.01, 0.99);
    const double direct = p_value(k, a, n, l);
    const double rec = p_value_by_recursion(k, a, n, l);
    // Both forms cancel terms of size up to (3(n+1))^k.
    const double scale = std::pow(3.0 * (n + 1), k);
    CHECK(std::fabs(direct - rec) <= 1e-13 * scale);
    CHECK(std::fabs(direct - static_cast<double>(p_value(k, Rational(a), Rational(n), Rational(l)))) <= 1e-13 * scale);
    // Increment factorization: Delta = a^(n-l-k) (1-2a)^(l-k) P_k for n-l >= k, l >= k.
    if (n >= l + static_cast<unsigned>(k) && l >= static_cast<unsigned>(k) && n <= 30) {
      const double pref = std::pow(a, static_cast<double>(n - l) - k) * std::pow(1 - 2 * a, static_cast<double>(l) - k);
      const double want = delta_leibniz_direct(k, a, n, l);
      CHECK(std::fabs(pref * direct - want) <= 1e-9 * std::max(1e-300, std::fabs(want)) + 1e-300);
    }
  }
}

TEST_CASE("P_k recursions") {
  for (int trial = 0; trial < 300; ++trial) {
    const int k = static_cast<int>(oracle::integer(1, 6));
    const auto n = static_cast<unsigned>(oracle::integer(0, 30));
    const auto l = static_cast<unsigned>(oracle::integer(0, n));
    const double a = oracle::uniform(0.05, 0.95);
    CHECK(check_recursions(k, a, n, l).max_residual() <= 1e-8);
  }
}

TEST_CASE("R_2 and the degree of R_k") {
  for (int n = 0; n <= 12; ++n) {
    for (int l = 0; l <= n; ++l) {
      for (int num : {1, 2, 3, 5, 7}) {
        const Rational a(num, 11);
        const Rational printed = -(1 - 2 * a) * ((1 - 2 * a) * n - l) - 2 * a * l;
        CHECK(r_value(2, a, Rational(n), Rational(l)) == printed);
      }
    }
  }
  // deg R_k <= k-1: the k-th finite difference along n vanishes for fixed l/n direction.
  for (int k = 1; k <= 6; ++k) {
    const Rational a(2, 7);
    Rational diff = 0;
    for (int i = 0; i <= k; ++i) {
      Rational c = 1;
      for (int t = 1; t <= i; ++t) c = c * (k - i + t) / t;
      const Rational m(20 + i);
      diff += ((i % 2) ? -c : c) * r_value(k, a, m, m / 2);
    }
    CHECK(diff == 0);
  }
}

TEST_CASE("a = 1/2 closed form") {
  for (int k = 0; k <= 4; ++k) {
    for (unsigned n = static_cast<unsigned>(std::max(k, 1)); n <= 7; ++n) {
      for (std::uint64_t j = 0; j < pow3(n); ++j) {
        const double got = delta_half(k, n, j);
        const double want = static_cast<double>(delta_leibniz_direct(k, Rational(1, 2), n, ones_of(j)));
        CHECK(std::fabs(got - want) <= 1e-12 * std::max(1.0, std::fabs(want)));
      }
    }
  }
  CHECK(delta_half(2, 5, 13) == 0.0);  // 13 = 111 in base 3: three ones > k
  CHECK_THROWS_AS((void)delta_half(3, 2, 0), Error);
}

TEST_CASE("telescoping sums") {
  for (int k = 0; k <= 4; ++k) {
    for (unsigned n = 1; n <= 8; ++n) {
      for (double a : {0.2, 0.4, 0.7}) {
        oracle::CompensatedSum s;
        for (std::uint64_t j = 0; j < pow3(n); ++j) {
          const auto v = delta_general(k, a, TernaryInterval::make(n, j));
          s.add(v.delta);
          s.add(v.delta_lo);
        }
        CHECK(std::fabs(s.value() - (k == 0 ? 1.0 : 0.0)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("box containment at a = 1/2") {
  for (int k = 0; k <= 3; ++k) {
    const unsigned n0 = static_cast<unsigned>(std::max(2 * k - 1, 1));
    for (unsigned n = n0; n <= n0 + 2; ++n)
      for (std::uint64_t j = 0; j < pow3(n); j += 5) CHECK(box_containment_check(k, n, j));
  }
  CHECK_THROWS_AS((void)box_containment_check(3, 4, 0), Error);
}

TEST_CASE("oscillation bound dominates the measured oscillation") {
  for (double a : {0.2, 0.4, 0.6, 0.8}) {
    for (int k : {0, 1, 2}) {
      const unsigned n = 3;
      const unsigned sub = 6;
      const auto g = grid_values(k, a, n + sub);
      for (std::uint64_t j = 0; j < pow3(n); ++j) {
        double lo = g[j * pow3(sub)], hi = lo;
        for (std::uint64_t i = 0; i <= pow3(sub); ++i) {
          lo = std::min(lo, g[j * pow3(sub) + i]);
          hi = std::max(hi, g[j * pow3(sub) + i]);
        }
        CHECK(hi - lo <= osc_bound(k, a, TernaryInterval::make(n, j)) + 1e-12);
      }
    }
  }
}

TEST_CASE("sign alternation for a > 1/2") {
  for (double a : {0.55, 0.6, 0.75, 0.9}) {
    for (int k : {1, 2, 3}) {
      const unsigned start = find_alternation_start(k, a, 200);
      CHECK(start < 200);
      for (unsigned n = start + 1; n <= std::min(start + 20, 200u); ++n) {
        const double first = p_value(k, a, n, 0);
        for (unsigned l = 0; l <= n; ++l) CHECK(p_value(k, a, n, l) * first > 0);
      }
      // Increment signs beyond the start alternate with the parity of l.
      const unsigned n = std::max(start + 1, 2u);
      if (n <= 12) {
        for (std::uint64_t j = 0; j + 1 < pow3(n); ++j) {
          const auto d0 = delta_general(k, a, TernaryInterval::make(n, j));
          const auto d1 = delta_general(k, a, TernaryInterval::make(n, j + 1));
          CHECK(d0.sign * d1.sign < 0);
        }
      }
    }
  }
}
