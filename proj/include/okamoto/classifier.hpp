// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

#include "okamoto/ternary.hpp"

namespace okamoto {

struct CharacteristicValues {
  std::optional<double> phi;      ///< a in [0, 2/3]
  std::optional<double> c0;       ///< undefined at a = 1/3, 1/2
  double gamma = 0.0;             ///< -log_3 max{a, |1-2a|}
  std::optional<double> d;        ///< h(phi(a)), a in [0, 2/3]
  std::optional<double> d_tilde;  ///< h(1-2a), a in [0, 1/2]
};

CharacteristicValues characteristic_values(double a);

/// Thue-Morse sequence: parity of the binary digit sum of j.
int thue_morse(std::uint64_t j);

struct SpecialConstants {
  double a0 = 0.0;          ///< real root of 54a^3 - 27a^2 = 1
  double a_hat = 0.0;       ///< root of sum_{j>=1} t_j a^j = 1
  double inv_golden = 0.0;  ///< 2 / (1 + sqrt 5)
  std::size_t a_hat_terms = 0;
  double a_hat_tail = 0.0;  ///< a^J / (1-a) at the truncation J
};

SpecialConstants special_constants();

enum class Regime { Empty, CountableRational, DimensionZero, PositiveDimension };
std::string_view regime_name(Regime r);

/// Size regime of the set of infinite-derivative points, a in (1/2, 1).
Regime univoque_regime(double a);

enum class Verdict { FiniteZero, PlusInfinity, MinusInfinity, NotDifferentiable, Inconclusive };
std::string_view verdict_name(Verdict v);

struct PointClass {
  Verdict verdict = Verdict::Inconclusive;
  std::string reason;
  bool exact = false;
  FrequencyLimits stats;
  std::optional<std::size_t> ones;  ///< total count of 1s when finite
  std::optional<double> l_plus;
  std::optional<double> l_minus;
};

inline constexpr std::size_t kDefaultHorizon = std::size_t{1} << 20;

/// Whether M_{k,a} has a (necessarily zero) finite derivative at x.
PointClass classify_finite(int k, double a, const DigitSource& x, std::size_t horizon = kDefaultHorizon);

/// Whether M_{k,a} has an infinite derivative at x, and its sign.
PointClass classify_infinite(int k, double a, const DigitSource& x, std::size_t horizon = kDefaultHorizon);

/// Finite test first, then the infinite tests.
PointClass classify(int k, double a, const DigitSource& x, std::size_t horizon = kDefaultHorizon);

struct LimsupL {
  double value = 0.0;
  bool exact = false;
};

enum class TailDigit { Two, Zero };

/// limsup_n sum_{j>=1} a^j [x_{n+j} = d] with d = 2 (L+) or d = 0 (L-), a in (1/2, 1).
/// Requires finitely many 1s (checked up to the horizon).
LimsupL limsup_L(double a, const DigitSource& x, TailDigit d, std::size_t horizon = kDefaultHorizon);

/// A point whose 1s sit at b_n = floor(n/phi(a) - (k+delta)/log(3a) log n);
/// M_{k,a} is differentiable there and M_{k+1,a} is not. a in (0, 1/3).
DigitSource boundary_point(int k, double a, double delta, std::uint64_t seed = 0);

}  // namespace okamoto
