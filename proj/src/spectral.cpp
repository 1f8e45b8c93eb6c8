// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include "okamoto/spectral.hpp"

#include <cmath>
#include <numbers>

#include "okamoto/error.hpp"

namespace okamoto {

namespace {
constexpr double kLn3 = 1.0986122886681098;
}  // namespace

double phi(double a) {
  require(a >= 0.0 && a <= 2.0 / 3.0 + kParamEps, ErrorCode::Domain, "phi(a) needs a in [0, 2/3]");
  if (a == 0.0) return 1.0;
  if (param_eq(a, 1.0 / 3.0)) return 1.0 / 3.0;
  if (param_eq(a, 0.5)) return 0.0;
  return std::log(3.0 * a) / (std::log(a) - std::log(std::fabs(1.0 - 2.0 * a)));
}

std::optional<double> c0(double a) {
  require_parameter(a);
  if (param_eq(a, 1.0 / 3.0) || param_eq(a, 0.5)) return std::nullopt;
  return 1.0 / (std::log(a) - std::log(std::fabs(1.0 - 2.0 * a)));
}

double contraction(double a) { return std::max(a, std::fabs(1.0 - 2.0 * a)); }

double holder_exponent(double a) {
  require_parameter(a);
  return -std::log(contraction(a)) / kLn3;
}

double entropy_h(double p) {
  require(p >= 0.0 && p <= 1.0, ErrorCode::Domain, "entropy_h needs p in [0,1]");
  auto xlogx = [](double v) { return v > 0.0 ? v * std::log(v) : 0.0; };
  return (-xlogx(p) - xlogx(1.0 - p) + (1.0 - p) * std::numbers::ln2) / kLn3;
}

}  // namespace okamoto
