// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace okamoto {

using Digit = std::uint8_t;
using Digits = std::vector<Digit>;
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// ---- generator families -------------------------------------------------

/// 1s exactly at b_n = floor(n/phi(a) - (k+delta)/log(3a) * log n); 0/2 elsewhere.
struct BnOnesRule {
  int k = 1;
  double a = 0.2;
  double delta = 0.5;
};

enum class FreeDigits { Random, Zeros, Twos };

/// Digits in {0,2}; 0 forced at positions = m-1 (mod m), 2 forced at positions = 0 (mod m).
struct BoundedRunRule {
  int m = 3;
  FreeDigits free = FreeDigits::Random;
};

/// Stationary Markov chain on {0,1,2} with invariant vector [a, 1-2a, a].
struct MarkovRule {
  double a = 1.0 / 3.0;
  double p = 1.0 / 9.0;
};

/// l_n follows floor((1-2a) n - c sqrt(n)) with unit steps; 0/2 elsewhere.
/// The centered statistic ((1-2a)n - l_n)/sqrt(n) then tends to c.
struct DeltaTargetRule {
  double a = 1.0 / 3.0;
  double c = 0.0;
};

using Rule = std::variant<BnOnesRule, BoundedRunRule, MarkovRule, DeltaTargetRule>;

// ---- digit source -------------------------------------------------------

/// A point of [0,1] given by its ternary digits x_1 x_2 ...
/// Finite and eventually periodic sources are kept in canonical form: ternary
/// rationals terminate in zeros (except x = 1, stored as the period "2").
/// Immutable; all queries are safe to call concurrently.
class DigitSource {
 public:
  enum class Kind { Finite, EventuallyPeriodic, Generated };

  static DigitSource finite(Digits prefix);
  static DigitSource periodic(Digits preperiod, Digits period);
  static DigitSource generated(Rule rule, std::uint64_t seed);
  static DigitSource from_rational(std::int64_t p, std::int64_t q);
  static DigitSource parse(std::string_view text);

  Kind kind() const noexcept { return kind_; }
  bool is_exact() const noexcept { return kind_ != Kind::Generated; }

  /// Digit x_i, 1-based.
  Digit digit(std::size_t i) const;
  /// x_1 ... x_n.
  Digits prefix(std::size_t n) const;

  /// Exact value; throws for generated sources.
  Rational value() const;

  /// The point 1 - x.
  DigitSource reflected() const;
  /// sigma^s x, the point with digits x_{s+1} x_{s+2} ...
  DigitSource shifted(std::size_t s) const;

  std::string to_string() const;

  // Exact-source structure (empty for Generated).
  const Digits& preperiod() const noexcept { return pre_; }
  const Digits& period() const noexcept { return period_; }
  const Rule* rule() const noexcept { return gen_ ? &gen_->rule : nullptr; }
  std::uint64_t seed() const noexcept { return gen_ ? gen_->seed : 0; }

  /// Index of the last nonzero digit of a Finite source (0 for x = 0).
  std::size_t terminal_length() const noexcept { return kind_ == Kind::Finite ? pre_.size() : 0; }

  bool operator==(const DigitSource& other) const { return to_string() == other.to_string(); }

 private:
  struct Gen {
    Rule rule;
    std::uint64_t seed = 0;
    std::uint64_t offset = 0;
    bool reflected = false;
  };

  DigitSource() = default;
  void fill_generated(std::size_t first, std::size_t last, Digit* out) const;

  Kind kind_ = Kind::Finite;
  Digits pre_;
  Digits period_;
  std::shared_ptr<const Gen> gen_;
};

// ---- statistics ---------------------------------------------------------

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

struct DigitStats {
  std::size_t n = 0;
  std::size_t l_n = 0;
  std::size_t rho_0 = 0;  ///< run of 0s starting at digit n+1 (kUnbounded if infinite)
  std::size_t rho_2 = 0;  ///< run of 2s starting at digit n+1 (kUnbounded if infinite)
  double r_n = 0.0;       ///< l_n - n phi(a); NaN when phi(a) is undefined (a > 2/3)
  double centered = 0.0;  ///< ((1-2a) n - l_n) / sqrt(n)
};

DigitStats stats_at(const DigitSource& x, std::size_t n, double a);

/// Count of 1s among x_1 ... x_n for every n in [0, horizon]; result[n] = l_n.
std::vector<std::size_t> ones_counts(const DigitSource& x, std::size_t horizon);

struct FrequencyLimits {
  double lambda_lo = 0.0;
  double lambda_hi = 0.0;
  double delta_lo = 0.0;
  double delta_hi = 0.0;
  bool exact = false;
  /// Exact sources only: count of 1s in the period and the period length.
  std::size_t period_ones = 0;
  std::size_t period_length = 0;
};

/// Exact for Finite/EventuallyPeriodic sources (delta is +-inf unless the
/// frequency equals 1-2a, when it is 0); windowed over n in [window/2, window]
/// for generated sources.
FrequencyLimits frequency_limits(const DigitSource& x, std::size_t window, double a);

/// Base-3 digits of j, most significant first, padded to n digits.
Digits base3_digits(std::uint64_t j, unsigned n);
/// Number of 1s in the base-3 representation of j.
unsigned ones_of(std::uint64_t j);

/// 3^n as an exact 64-bit integer; n <= 40.
std::uint64_t pow3(unsigned n);

/// Counter-based generator: uniform double in [0,1) from (seed, index).
double uniform_at(std::uint64_t seed, std::uint64_t index) noexcept;

}  // namespace okamoto
