// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "okamoto/ternary.hpp"

namespace okamoto {

/// I_{n,j} = [j 3^-n, (j+1) 3^-n]; l is the number of 1s in the base-3 digits of j.
struct TernaryInterval {
  unsigned n = 1;
  std::uint64_t j = 0;
  unsigned l = 0;

  static TernaryInterval make(unsigned n, std::uint64_t j);
  /// Interval of depth n with a prescribed digit count l (j left unspecified).
  static TernaryInterval with_ones(unsigned n, unsigned l);
};

/// Signed increment carried as sign * exp(log_magnitude); `delta` is the
/// plain double (0 or +-inf when outside the representable range).
struct IncrementValue {
  double delta = 0.0;
  double delta_lo = 0.0;  ///< rounding residual of delta, for compensated sums
  double log_magnitude = 0.0;
  int sign = 0;
  double p_value = 0.0;
};

/// Delta_{k,a}(I_{n,j}) = d^k/da^k [a^(n-l) (1-2a)^l], a != 1/2.
IncrementValue delta_general(int k, double a, const TernaryInterval& iv);

/// Leibniz sum for d^k/da^k [a^(n-l) (1-2a)^l] with plain substitution (0^0 = 1).
/// Valid for every a, including a = 1/2.
double delta_leibniz_direct(int k, double a, unsigned n, unsigned l);
Rational delta_leibniz_direct(int k, const Rational& a, unsigned n, unsigned l);

/// P_k(n,l): Delta = a^(n-l-k) (1-2a)^(l-k) P_k(n,l). Leibniz form.
double p_value(int k, double a, unsigned n, unsigned l);
Rational p_value(int k, const Rational& a, const Rational& n, const Rational& l);

/// P_k(n,l) built from P_0 = 1 through the a-derivative recursion
/// P_{k+1} = a(1-2a) dP_k/da + ((1-2a)n - l - (1-4a)k) P_k.
double p_value_by_recursion(int k, double a, unsigned n, unsigned l);

/// R_k(n,l) = P_k(n,l) - ((1-2a)n - l)^k.
double r_value(int k, double a, unsigned n, unsigned l);
Rational r_value(int k, const Rational& a, const Rational& n, const Rational& l);

struct RecursionReport {
  double residual_n = 0.0;   ///< P_k(n+1,l) - P_k(n,l) - k(1-2a)P_{k-1}(n,l), relative
  double residual_nl = 0.0;  ///< P_k(n+1,l+1) - P_k(n,l) + 2ka P_{k-1}(n,l), relative
  double residual_a = 0.0;   ///< a-derivative recursion, relative
  double max_residual() const;
};

RecursionReport check_recursions(int k, double a, unsigned n, unsigned l);

/// Increment at a = 1/2; zero when l(j) > k. Throws when n < k.
double delta_half(int k, unsigned n, std::uint64_t j);

/// Upper bound on the oscillation of M_{k,a} over I_{n,j}; a != 1/2.
double osc_bound(int k, double a, const TernaryInterval& iv);

/// At a = 1/2: every value of M_k on the depth-(n+3) subgrid of I_{n,j} lies
/// between the endpoint values. Requires n >= 2k-1 and n >= 1.
bool box_containment_check(int k, unsigned n, std::uint64_t j);

/// For a > 1/2: smallest n0 such that for every n in (n0, n_max] the signs of
/// Delta_{k,a}(I_{n,j}) alternate in j. Returns n_max when no such n0 < n_max.
unsigned find_alternation_start(int k, double a, unsigned n_max);

}  // namespace okamoto
