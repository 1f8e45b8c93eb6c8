// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include "okamoto/classifier.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <vector>

#include "okamoto/error.hpp"
#include "okamoto/hermite_q.hpp"
#include "okamoto/spectral.hpp"

namespace okamoto {

namespace {

constexpr double kThresholdEps = 1e-9;   // |delta - t_i| below this counts as touching t_i
constexpr double kTrendEps = 0.05;       // |slope| of s_n against log n below this is unresolved
constexpr double kBandDeltaMax = 10.0;   // generated sources with |delta| below this use the band rule

bool is_one(const DigitSource& x) {
  return x.kind() == DigitSource::Kind::EventuallyPeriodic && x.preperiod().empty() && x.period().size() == 1 &&
         x.period()[0] == 2;
}

bool is_endpoint(const DigitSource& x) {
  return (x.kind() == DigitSource::Kind::Finite && x.preperiod().empty()) || is_one(x);
}

PointClass make(Verdict v, std::string reason, const DigitSource& x) {
  PointClass p;
  p.verdict = v;
  p.reason = std::move(reason);
  p.exact = x.is_exact();
  return p;
}

Verdict signed_infinity(int parity_exponent) {
  return parity_exponent % 2 == 0 ? Verdict::PlusInfinity : Verdict::MinusInfinity;
}

bool period_has_one(const DigitSource& x) {
  return x.kind() == DigitSource::Kind::EventuallyPeriodic &&
         std::find(x.period().begin(), x.period().end(), Digit{1}) != x.period().end();
}

std::size_t preperiod_ones(const DigitSource& x) {
  return static_cast<std::size_t>(std::count(x.preperiod().begin(), x.preperiod().end(), Digit{1}));
}

// Least-squares slope of ys against xs.
double ls_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

// ---- finite derivative, a = 1/2 -----------------------------------------

PointClass finite_half(int k, const DigitSource& x, std::size_t horizon) {
  const auto need = static_cast<std::size_t>(k + 1);
  if (x.is_exact()) {
    if (period_has_one(x)) return make(Verdict::FiniteZero, "flat-segment: l_n = k+1 inside a nonterminating expansion", x);
    if (preperiod_ones(x) < need) return make(Verdict::NotDifferentiable, "at most k ones: secant slopes grow", x);
    if (x.kind() == DigitSource::Kind::EventuallyPeriodic)
      return make(Verdict::FiniteZero, "flat-segment: l_n = k+1 inside a nonterminating expansion", x);
    // Terminating: the (k+1)-th 1 must not be the last nonzero digit.
    std::size_t seen = 0;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < x.preperiod().size(); ++i) {
      if (x.preperiod()[i] == 1 && ++seen == need) {
        pos = i + 1;
        break;
      }
    }
    if (pos < x.terminal_length()) return make(Verdict::FiniteZero, "flat-segment: l_n = k+1 with 3^n x not an integer", x);
    return make(Verdict::NotDifferentiable, "ternary rational ending at its (k+1)-th one: mirrors a point with k ones", x);
  }
  const Digits ds = x.prefix(horizon);
  std::size_t seen = 0;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds[i] == 1 && ++seen == need) {
      const bool more = std::any_of(ds.begin() + static_cast<std::ptrdiff_t>(i + 1), ds.end(), [](Digit d) { return d != 0; });
      if (more) return make(Verdict::FiniteZero, "flat-segment: l_n = k+1 with 3^n x not an integer", x);
      break;
    }
  }
  return make(Verdict::NotDifferentiable, "no flat segment within the horizon", x);
}

}  // namespace

// ---- spectral values and constants --------------------------------------

CharacteristicValues characteristic_values(double a) {
  require(a >= 0.0 && a < 1.0, ErrorCode::Domain, "characteristic values need a in [0, 1)");
  CharacteristicValues v;
  if (a <= 2.0 / 3.0 + kParamEps) {
    v.phi = phi(std::min(a, 2.0 / 3.0));
    v.d = entropy_h(std::clamp(*v.phi, 0.0, 1.0));
  }
  if (a > 0.0) v.c0 = c0(a);
  v.gamma = a > 0.0 ? holder_exponent(a) : 0.0;
  if (a <= 0.5 + kParamEps) v.d_tilde = entropy_h(std::clamp(1.0 - 2.0 * a, 0.0, 1.0));
  return v;
}

int thue_morse(std::uint64_t j) { return std::popcount(j) & 1; }

SpecialConstants special_constants() {
  SpecialConstants s;
  auto bisect = [](auto f, double lo, double hi) {
    require(f(lo) < 0.0 && f(hi) > 0.0, ErrorCode::Internal, "constant bracket lost");
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  s.a0 = bisect([](double a) { return 54.0 * a * a * a - 27.0 * a * a - 1.0; }, 0.5, 0.6);

  constexpr double lo = 0.5;
  constexpr double hi = 0.7;
  std::size_t J = 1;
  while (std::pow(hi, static_cast<double>(J)) / (1.0 - hi) >= 1e-14) ++J;
  s.a_hat_terms = J;
  s.a_hat = bisect(
      [J](double a) {
        double sum = 0.0;
        double p = 1.0;
        for (std::size_t j = 1; j <= J; ++j) {
          p *= a;
          sum += thue_morse(j) * p;
        }
        return sum - 1.0;
      },
      lo, hi);
  s.a_hat_tail = std::pow(s.a_hat, static_cast<double>(J)) / (1.0 - s.a_hat);
  s.inv_golden = 2.0 / (1.0 + std::sqrt(5.0));
  return s;
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::Empty: return "Empty";
    case Regime::CountableRational: return "CountableRational";
    case Regime::DimensionZero: return "DimensionZero";
    case Regime::PositiveDimension: return "PositiveDimension";
  }
  return "Empty";
}

Regime univoque_regime(double a) {
  require(a > 0.5 && a < 1.0, ErrorCode::Domain, "univoque regimes are defined for a in (1/2, 1)");
  const SpecialConstants s = special_constants();
  if (a >= s.inv_golden) return Regime::Empty;
  if (param_eq(a, s.a_hat)) return Regime::DimensionZero;
  if (a > s.a_hat) return Regime::CountableRational;
  return Regime::PositiveDimension;
}

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::FiniteZero: return "FiniteZero";
    case Verdict::PlusInfinity: return "PlusInfinity";
    case Verdict::MinusInfinity: return "MinusInfinity";
    case Verdict::NotDifferentiable: return "NotDifferentiable";
    case Verdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

// ---- tail sums for a > 1/2 ----------------------------------------------

LimsupL limsup_L(double a, const DigitSource& x, TailDigit which, std::size_t horizon) {
  require(a > 0.5 && a < 1.0, ErrorCode::Domain, "tail sums are used for a in (1/2, 1)");
  const Digit d = which == TailDigit::Two ? 2 : 0;
  LimsupL out;
  if (x.is_exact()) {
    require(!period_has_one(x), ErrorCode::Domain, "tail sums need finitely many 1s; the period contains a 1");
    out.exact = true;
    if (x.kind() == DigitSource::Kind::Finite) {
      out.value = d == 0 ? a / (1.0 - a) : 0.0;
      return out;
    }
    const Digits& per = x.period();
    const std::size_t P = per.size();
    const double scale = 1.0 / (1.0 - std::pow(a, static_cast<double>(P)));
    for (std::size_t s = 0; s < P; ++s) {
      double sum = 0.0;
      double p = 1.0;
      for (std::size_t j = 1; j <= P; ++j) {
        p *= a;
        if (per[(s + j - 1) % P] == d) sum += p;
      }
      out.value = std::max(out.value, sum * scale);
    }
    return out;
  }
  std::size_t J = 1;
  while (std::pow(a, static_cast<double>(J)) / (1.0 - a) >= 1e-12) ++J;
  const Digits ds = x.prefix(horizon + J);
  for (std::size_t i = horizon / 2; i < horizon; ++i)
    require(ds[i] != 1, ErrorCode::Domain, "tail sums need finitely many 1s; a 1 persists past half the horizon");
  // Window sums over n in [horizon/2, horizon), truncated at J terms.
  for (std::size_t n = horizon / 2; n < horizon; ++n) {
    double sum = 0.0;
    double p = 1.0;
    for (std::size_t j = 1; j <= J; ++j) {
      p *= a;
      if (ds[n + j - 1] == d) sum += p;
    }
    out.value = std::max(out.value, sum);
  }
  return out;
}

// ---- classification -----------------------------------------------------

PointClass classify_finite(int k, double a, const DigitSource& x, std::size_t horizon) {
  require(k >= 1, ErrorCode::Domain, "classification needs k >= 1");
  require_parameter(a);
  PointClass out;
  if (is_endpoint(x)) {
    out = make(Verdict::Inconclusive, "endpoint: only one-sided derivatives exist", x);
  } else if (a >= 2.0 / 3.0 - kParamEps || param_eq(a, 1.0 / 3.0)) {
    out = make(Verdict::NotDifferentiable, "nowhere-differentiable parameter range", x);
  } else if (param_eq(a, 0.5)) {
    out = finite_half(k, x, horizon);
  } else {
    const double ph = phi(a);
    const double cz = *c0(a);
    // Finite derivative iff s_n = r_n - k C0 log n tends to -inf (a < 1/3) or +inf (a > 1/3).
    const int want = a < 1.0 / 3.0 ? -1 : 1;
    if (x.is_exact()) {
      const FrequencyLimits f = frequency_limits(x, 2, a);
      const double lam = f.lambda_lo;
      if (std::fabs(lam - ph) <= kParamEps) {
        out = make(Verdict::Inconclusive, "ones frequency equals phi(a) to working precision", x);
      } else {
        const int drift = lam > ph ? 1 : -1;
        out = drift == want
                  ? make(Verdict::FiniteZero, drift > 0 ? "ones frequency above phi(a)" : "ones frequency below phi(a)", x)
                  : make(Verdict::NotDifferentiable,
                         drift > 0 ? "ones frequency above phi(a): increments too large" : "ones frequency below phi(a): increments too large", x);
      }
    } else {
      require(horizon >= 64, ErrorCode::Domain, "horizon must be >= 64 for generated sources");
      const auto l = ones_counts(x, horizon);
      std::vector<double> xs, ys;
      const double lo = std::log(std::sqrt(static_cast<double>(horizon)));
      const double hi = std::log(static_cast<double>(horizon));
      for (int i = 0; i <= 64; ++i) {
        const double ln = lo + (hi - lo) * i / 64.0;
        const auto n = static_cast<std::size_t>(std::exp(ln));
        const double nd = static_cast<double>(n);
        xs.push_back(std::log(nd));
        ys.push_back(static_cast<double>(l[n]) - nd * ph - k * cz * std::log(nd));
      }
      const double slope = ls_slope(xs, ys);
      if (std::fabs(slope) < kTrendEps) {
        out = make(Verdict::Inconclusive, "drift of r_n - k C0 log n unresolved at the horizon", x);
      } else if ((slope > 0 ? 1 : -1) == want) {
        out = make(Verdict::FiniteZero, want < 0 ? "r_n + k|C0| log n decreases without bound" : "r_n - k C0 log n increases without bound", x);
      } else {
        out = make(Verdict::NotDifferentiable, "r_n - k C0 log n drifts the wrong way", x);
      }
    }
  }
  if (a > 0.0 && a < 1.0) out.stats = frequency_limits(x, x.is_exact() ? 2 : horizon, a);
  return out;
}

namespace {

struct Ngz {
  bool known = false;
  bool holds = false;
};

// Whether 3^n a^(n-l_n) (1-2a)^(l_n) >= 1 for all large n.
Ngz not_going_to_zero(double a, const DigitSource& x, const FrequencyLimits& f, std::size_t horizon) {
  if (param_eq(a, 1.0 / 3.0)) return {true, true};
  const double la = std::log(a);
  const double lb = std::log(1.0 - 2.0 * a);
  if (x.is_exact()) {
    const double e = std::log(3.0) + (1.0 - f.lambda_lo) * la + f.lambda_lo * lb;
    if (std::fabs(e) <= kParamEps) return {false, false};
    return {true, e > 0};
  }
  const auto l = ones_counts(x, horizon);
  for (std::size_t n = horizon / 2; n <= horizon; ++n) {
    const double nd = static_cast<double>(n);
    const double ln = static_cast<double>(l[n]);
    if (nd * std::log(3.0) + (nd - ln) * la + ln * lb < 0.0) return {true, false};
  }
  return {true, true};
}

PointClass band_rule(int k, double a, const DigitSource& x, const FrequencyLimits& f, std::size_t horizon) {
  const ThresholdSet th = thresholds(k, a);
  const auto& t = th.scaled;
  const double dlo = f.delta_lo;
  const double dhi = f.delta_hi;
  for (double ti : t)
    if (std::fabs(dlo - ti) <= kThresholdEps || std::fabs(dhi - ti) <= kThresholdEps)
      return make(Verdict::Inconclusive, "centered statistic touches a threshold", x);
  for (double ti : t)
    if (dlo < ti && ti < dhi) return make(Verdict::NotDifferentiable, "centered statistic straddles a threshold", x);
  if (dhi < t.front()) {
    const Ngz g = not_going_to_zero(a, x, f, horizon);
    if (!g.known) return make(Verdict::Inconclusive, "growth condition 3^n a^(n-l)(1-2a)^l >= 1 undecided", x);
    if (!g.holds) return make(Verdict::Inconclusive, "centered statistic below all thresholds but increments shrink", x);
    return make(signed_infinity(k), "centered statistic below all thresholds", x);
  }
  if (dlo > t.back()) {
    const Ngz g = not_going_to_zero(a, x, f, horizon);
    if (!g.known) return make(Verdict::Inconclusive, "growth condition 3^n a^(n-l)(1-2a)^l >= 1 undecided", x);
    if (!g.holds) return make(Verdict::Inconclusive, "centered statistic above all thresholds but increments shrink", x);
    return make(Verdict::PlusInfinity, "centered statistic above all thresholds", x);
  }
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    if (t[i] < dlo && dhi < t[i + 1]) {
      const int band = static_cast<int>(i) + 1;
      return make(signed_infinity(k - band), "centered statistic between thresholds " + std::to_string(band) + " and " +
                                                 std::to_string(band + 1), x);
    }
  }
  return make(Verdict::Inconclusive, "centered statistic not resolved against the thresholds", x);
}

PointClass infinite_small_a(int k, double a, const DigitSource& x, std::size_t horizon) {
  const FrequencyLimits f = frequency_limits(x, horizon, a);
  const double nu = 1.0 - 2.0 * a;
  const double ph = phi(a);
  const double lo = f.lambda_lo;
  const double hi = f.lambda_hi;
  const bool band = x.is_exact() ? (std::fabs(lo - nu) <= kParamEps && std::fabs(hi - nu) <= kParamEps)
                                 : (std::fabs(f.delta_lo) <= kBandDeltaMax && std::fabs(f.delta_hi) <= kBandDeltaMax);
  if (band) return band_rule(k, a, x, f, horizon);
  if (lo < nu && nu < hi) return make(Verdict::NotDifferentiable, "ones frequency oscillates across 1-2a", x);
  if (param_eq(a, 1.0 / 3.0)) {
    if (hi < 1.0 / 3.0) return make(Verdict::PlusInfinity, "ones frequency below 1/3", x);
    if (lo > 1.0 / 3.0) return make(signed_infinity(k), "ones frequency above 1/3", x);
  } else if (a < 1.0 / 3.0) {
    if (lo > nu) return make(signed_infinity(k), "ones frequency above 1-2a", x);
    if (ph < lo && hi < nu) return make(Verdict::PlusInfinity, "ones frequency between phi(a) and 1-2a", x);
    if (lo < ph) return make(Verdict::NotDifferentiable, "ones frequency below phi(a)", x);
  } else {
    if (hi < nu) return make(Verdict::PlusInfinity, "ones frequency below 1-2a", x);
    if (nu < lo && hi < ph) return make(signed_infinity(k), "ones frequency between 1-2a and phi(a)", x);
    if (hi > ph) return make(Verdict::NotDifferentiable, "ones frequency above phi(a)", x);
  }
  return make(Verdict::Inconclusive, "ones frequency on a boundary of the frequency rules", x);
}

PointClass infinite_half(int k, const DigitSource& x, std::size_t horizon) {
  constexpr double c = 0.5849625007211562;  // log_2 3 - 1
  if (x.is_exact()) {
    if (period_has_one(x)) return make(Verdict::NotDifferentiable, "more than k ones", x);
    const auto l = static_cast<int>(preperiod_ones(x));
    if (l > k) return make(Verdict::NotDifferentiable, "more than k ones", x);
    // Canonical form: a Finite source ends in an infinite run of 0s; an eventually
    // periodic one without 1s has both digits in its period, so its runs are bounded.
    const bool bounded_runs = x.kind() == DigitSource::Kind::EventuallyPeriodic;
    if (l == k) {
      return bounded_runs ? make(signed_infinity(k), "exactly k ones and bounded runs: Eidswick condition holds", x)
                          : make(Verdict::NotDifferentiable, "exactly k ones but an infinite run: Eidswick condition fails", x);
    }
    return bounded_runs ? make(signed_infinity(l), "fewer than k ones and bounded runs: run-length bound holds", x)
                        : make(Verdict::NotDifferentiable, "fewer than k ones and an infinite run: run-length bound fails", x);
  }
  const std::size_t margin = 4096;
  const Digits ds = x.prefix(horizon + margin);
  std::size_t l = 0;
  for (std::size_t i = 0; i < horizon; ++i) l += ds[i] == 1;
  if (l > static_cast<std::size_t>(k)) return make(Verdict::NotDifferentiable, "more than k ones within the horizon", x);
  // run lengths rho_n for n in [horizon/2, horizon)
  std::vector<std::size_t> run(ds.size() + 1, 0);
  for (std::size_t i = ds.size(); i-- > 0;)
    run[i] = (i + 1 < ds.size() && ds[i + 1] == ds[i]) ? run[i + 1] + 1 : 1;
  bool sufficient = true;
  bool necessary = true;
  bool eidswick = true;
  for (std::size_t n = horizon / 2; n < horizon; ++n) {
    const Digit d = ds[n];  // digit n+1
    if (d == 1) continue;
    const auto rho = static_cast<double>(run[n]);
    const double ln = std::log2(static_cast<double>(n));
    if (static_cast<int>(l) < k) {
      const double kl = std::log2(static_cast<double>(k - static_cast<int>(l)));
      if (rho > ln - kl - 2.0) sufficient = false;
      if (rho > ln - kl) necessary = false;
    } else if (rho > 0.5 * c * static_cast<double>(n)) {
      eidswick = false;
    }
  }
  if (static_cast<int>(l) == k) {
    return eidswick ? make(signed_infinity(k), "exactly k ones and short runs: consistent with the Eidswick condition", x)
                    : make(Verdict::NotDifferentiable, "exactly k ones and long runs: Eidswick condition fails", x);
  }
  if (sufficient) return make(signed_infinity(static_cast<int>(l)), "fewer than k ones: run-length sufficient bound holds", x);
  if (!necessary) return make(Verdict::NotDifferentiable, "fewer than k ones: run-length necessary bound fails", x);
  return make(Verdict::Inconclusive, "run lengths between the necessary and sufficient bounds", x);
}

PointClass infinite_large_a(int k, double a, const DigitSource& x, std::size_t horizon) {
  (void)k;
  std::size_t ones = 0;
  if (x.is_exact()) {
    if (period_has_one(x)) return make(Verdict::NotDifferentiable, "infinitely many ones: increment signs keep alternating", x);
    ones = preperiod_ones(x);
  } else {
    const Digits ds = x.prefix(horizon);
    const bool late = std::find(ds.begin() + static_cast<std::ptrdiff_t>(horizon / 2), ds.end(), Digit{1}) != ds.end();
    if (late) return make(Verdict::NotDifferentiable, "ones persist through the horizon: increment signs keep alternating", x);
    ones = static_cast<std::size_t>(std::count(ds.begin(), ds.end(), Digit{1}));
  }
  const LimsupL lp = limsup_L(a, x, TailDigit::Two, horizon);
  const LimsupL lm = limsup_L(a, x, TailDigit::Zero, horizon);
  PointClass out;
  const double tol = x.is_exact() ? kParamEps : 0.0;
  if (lp.value > 1.0 + tol || lm.value > 1.0 + tol) {
    out = make(Verdict::NotDifferentiable, "a tail sum exceeds 1", x);
  } else if (lp.value < 1.0 - tol && lm.value < 1.0 - tol) {
    out = make(signed_infinity(static_cast<int>(ones)), "both tail sums below 1", x);
  } else {
    out = make(Verdict::Inconclusive, "a tail sum equals 1", x);
  }
  out.ones = ones;
  out.l_plus = lp.value;
  out.l_minus = lm.value;
  return out;
}

}  // namespace

PointClass classify_infinite(int k, double a, const DigitSource& x, std::size_t horizon) {
  require(k >= 1, ErrorCode::Domain, "classification needs k >= 1");
  require_parameter(a);
  require(x.is_exact() || horizon >= 64, ErrorCode::Domain, "horizon must be >= 64 for generated sources");
  PointClass out;
  if (is_endpoint(x)) out = make(Verdict::Inconclusive, "endpoint: only one-sided derivatives exist", x);
  else if (param_eq(a, 0.5)) out = infinite_half(k, x, horizon);
  else if (a < 0.5) out = infinite_small_a(k, a, x, horizon);
  else out = infinite_large_a(k, a, x, horizon);
  out.stats = frequency_limits(x, x.is_exact() ? 2 : horizon, a);
  if (x.is_exact() && !period_has_one(x) && !out.ones) out.ones = preperiod_ones(x);
  return out;
}

PointClass classify(int k, double a, const DigitSource& x, std::size_t horizon) {
  PointClass fin = classify_finite(k, a, x, horizon);
  if (fin.verdict == Verdict::FiniteZero) return fin;
  PointClass inf = classify_infinite(k, a, x, horizon);
  if (inf.verdict == Verdict::PlusInfinity || inf.verdict == Verdict::MinusInfinity) return inf;
  PointClass out = inf;
  if (fin.verdict == Verdict::NotDifferentiable && inf.verdict == Verdict::NotDifferentiable) {
    out.reason = "no finite derivative (" + fin.reason + "); no infinite derivative (" + inf.reason + ")";
  } else {
    out.verdict = Verdict::Inconclusive;
    out.reason = "finite test: " + fin.reason + "; infinite test: " + inf.reason;
  }
  return out;
}

DigitSource boundary_point(int k, double a, double delta, std::uint64_t seed) {
  require(a > 0.0 && a < 1.0 / 3.0, ErrorCode::Domain, "boundary_point needs a in (0, 1/3)");
  require(delta > 0.0 && delta < 1.0, ErrorCode::Domain, "boundary_point needs delta in (0, 1)");
  require(k >= 1, ErrorCode::Domain, "boundary_point needs k >= 1");
  return DigitSource::generated(BnOnesRule{k, a, delta}, seed);
}

}  // namespace okamoto
