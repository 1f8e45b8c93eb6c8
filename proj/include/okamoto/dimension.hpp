// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace okamoto {

/// 1 + log_3(4a - 1) for a >= 1/2, and 1 for a <= 1/2.
double box_dim_formula(double a);

struct BoxCountRow {
  unsigned n = 0;
  std::uint64_t count = 0;
  double log3count = 0.0;
  std::uint64_t count_upper = 0;  ///< count with each column widened by the sub-cell oscillation bound
};

struct DimensionReport {
  int k = 0;
  double a = 0.0;
  unsigned m = 0;
  std::vector<BoxCountRow> rows;
  double slope = 0.0;             ///< least squares of log_3 N against n
  double prefactor_exponent = 0;  ///< beta in N ~ n^beta 3^(n D)
  double slope_corrected = 0.0;   ///< least squares of log_3(N / n^beta) against n
  double formula = 0.0;
  double residual = 0.0;          ///< |slope_corrected - formula|
  double residual_raw = 0.0;      ///< |slope - formula|
};

/// Number of 3^-n mesh squares met by the graph of M_{k,a}, estimated from
/// the 3^m subgrid values in every column.
std::uint64_t box_count(int k, double a, unsigned n, unsigned m);

/// Box counts for n in [n_min, n_max] and the fitted slopes. n_max + m <= 16.
DimensionReport box_dimension(int k, double a, unsigned n_min, unsigned n_max, unsigned m);

struct MarkovModel {
  double a = 0.0;
  double p = 0.0;
  double r = 0.0;
  std::array<std::array<double, 3>, 3> matrix{};
  std::array<double, 3> stationary{};
  double entropy = 0.0;  ///< H(a,p), natural logarithm
  std::optional<double> p_crit;
  std::optional<double> dim_lower;
  std::optional<double> lil_constant;
  double c0 = 0.0;  ///< sqrt(2a(1-2a))
};

MarkovModel markov_model(double a, double p);

/// H(a,p) in nats.
double markov_entropy(double a, double p);

struct LilReport {
  double a = 0.0;
  double p = 0.0;
  std::size_t steps = 0;
  std::size_t trials = 0;
  std::uint64_t seed = 0;
  double constant = 0.0;  ///< almost-sure limsup predicted by the model
  double c0 = 0.0;
  std::vector<double> trial_max;  ///< max over n >= 1000 of (l_n - (1-2a)n)/sqrt(2n log log n)
  double max = 0.0;
  std::size_t below_c0 = 0;
};

LilReport lil_simulate(double a, double p, std::size_t steps, std::size_t trials, std::uint64_t seed);

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
  double expected = 0.0;
  double z() const { return std_error > 0 ? (value - expected) / std_error : 0.0; }
};

struct CycleStats {
  std::size_t cycles = 0;
  Estimate mean_u;               ///< run of non-1s plus the following run of 1s
  Estimate var_z;                ///< 2a (1-run) - (1-2a) (non-1 run)
  Estimate mean_z;
  std::array<Estimate, 3> freq;  ///< digit frequencies, batch-means errors
  double stationarity_residual = 0.0;  ///< max |pi P - pi|
};

CycleStats markov_cycle_stats(double a, double p, std::size_t cycles, std::uint64_t seed);

struct CurvePoint {
  double a = 0.0;
  double htilde = 0.0;  ///< H(a, p_crit(a)) / log 3
  double hupper = 0.0;  ///< h(1-2a)
};

std::vector<CurvePoint> dim_lower_curve(std::span<const double> grid);

}  // namespace okamoto
