// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

namespace okamoto {

/// Critical frequency of 1-digits, extended continuously to a = 0, 1/3, 1/2.
/// Defined for a in [0, 2/3].
double phi(double a);

/// 1 / (log a - log|1-2a|); empty at a = 1/3 and a = 1/2.
std::optional<double> c0(double a);

/// max{a, |1-2a|}
double contraction(double a);

/// Hoelder exponent -log_3 max{a, |1-2a|}.
double holder_exponent(double a);

/// Dimension of the set of points with 1-frequency p; uses 0 log 0 = 0.
double entropy_h(double p);

}  // namespace okamoto
