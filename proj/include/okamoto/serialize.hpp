// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <span>
#include <string>

#include "okamoto/classifier.hpp"
#include "okamoto/dimension.hpp"
#include "okamoto/evaluator.hpp"

namespace okamoto {

/// 17 significant digits, enough to round-trip any double.
std::string format_double(double v);

std::string eval_json(int k, double a, const DigitSource& x, const EvalResult& r);

/// Rows "x,value" for x = j/3^n, j = 0 ... 3^n, with a header line.
std::string graph_csv(int k, double a, unsigned n);

std::string classify_json(int k, double a, const DigitSource& x, const PointClass& pc);

/// Coefficients and roots of q_k; with a, also the thresholds scaled for that parameter.
std::string qpoly_json(int k, std::optional<double> a);

std::string constants_json();

std::string boxdim_json(const DimensionReport& rep);
std::string boxdim_csv(const DimensionReport& rep);

std::string markov_json(const MarkovModel& mm, const std::optional<CycleStats>& cycles);
std::string lil_json(const LilReport& rep);
std::string curve_csv(std::span<const CurvePoint> pts);

}  // namespace okamoto
