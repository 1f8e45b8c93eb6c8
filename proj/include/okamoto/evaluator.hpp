// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "okamoto/ternary.hpp"

namespace okamoto {

/// Largest derivative order handled by the evaluators.
inline constexpr int kMaxOrder = 12;

/// Upper bound on the number of series terms before a tolerance request fails.
inline constexpr std::size_t kMaxTerms = std::size_t{1} << 22;

/// Floating-point rounding allowance. err_bound reports truncation only;
/// callers comparing against exact values should add this slack.
inline constexpr double kRoundingSlack = 1e-12;

struct EvalResult {
  double value = 0.0;
  double err_bound = 0.0;
  std::size_t terms = 0;
  bool exact = false;
};

struct SeriesWeights {
  double q0 = 0.0;
  double q1 = 0.0;
  double q2 = 0.0;
  double b = 0.0;      ///< max{a, |1-2a|}
  double gamma = 0.0;  ///< -log_3 b
};

SeriesWeights series_weights(double a);

/// F_a(x) to absolute accuracy tol.
EvalResult okamoto_F(double a, const DigitSource& x, double tol);

/// M_{k,a}(x) = d^k/da^k F_a(x) to absolute accuracy tol. k = 0 gives F_a.
EvalResult partial_M(int k, double a, const DigitSource& x, double tol);

/// Bound on the sum of |d^k/da^k| of the series terms with index >= m.
/// Per-term bound b^n (n(1/a + 2/|1-2a|) + 1)^k, or (1/2)^n k! 4^k (2n+1)^k at a = 1/2.
double tail_bound(int k, double a, std::size_t m);

/// Sum of the first `terms` series terms of M_{k,a}(x), no error control.
double series_partial_sum(int k, double a, const DigitSource& x, std::size_t terms);

/// M_{k,a}(0.d_1...d_n) for a terminating digit string.
double exact_at_digits(int k, double a, std::span<const Digit> digits);

/// M_{k,a}(j / 3^n) for 0 <= j <= 3^n.
double exact_at_rational(int k, double a, unsigned n, std::uint64_t j);

/// M_{k,a}(x) by iterating the functional equations `depth` times; the
/// remainder is bounded through sup-norm bounds on M_0 ... M_k.
EvalResult eval_via_FE(int k, double a, const DigitSource& x, std::size_t depth);

/// M_{k,a}(j / 3^depth) for j = 0 ... 3^depth.
std::vector<double> grid_values(int k, double a, unsigned depth);

}  // namespace okamoto
