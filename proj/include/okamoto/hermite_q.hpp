// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "okamoto/ternary.hpp"

namespace okamoto {

/// q_1 = t, q_{k+1} = t q_k - q_k'. Integer coefficients, ascending.
struct QPolynomial {
  int k = 0;
  std::vector<BigInt> coeffs;

  long double operator()(long double t) const;
};

QPolynomial q_poly(int k);

/// The k real roots of q_k, ascending, located by bisection inside the
/// brackets given by the roots of q_{k-1}.
std::vector<double> q_roots(int k);

struct ThresholdSet {
  std::vector<double> roots;
  std::vector<double> scaled;  ///< roots * sqrt(2a(1-2a))
};

ThresholdSet thresholds(int k, double a);

}  // namespace okamoto
