// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "okamoto/classifier.hpp"
#include "okamoto/error.hpp"
#include "okamoto/spectral.hpp"
#include "support/oracle.hpp"

using namespace okamoto;

namespace {

Verdict fin(int k, double a, const char* x) { return classify_finite(k, a, DigitSource::parse(x)).verdict; }
Verdict inf(int k, double a, const char* x) { return classify_infinite(k, a, DigitSource::parse(x)).verdict; }
Verdict both(int k, double a, const char* x) { return classify(k, a, DigitSource::parse(x)).verdict; }

// phi(a) from its defining relation 3 a^(1-phi) |1-2a|^phi = 1.
double phi_oracle(double a) { return std::log(3 * a) / (std::log(a) - std::log(std::fabs(1 - 2 * a))); }

}  // namespace

TEST_CASE("characteristic values") {
  for (double a : {0.1, 0.2, 0.3, 0.4, 0.45, 0.55, 0.6, 0.65}) {
    const auto v = characteristic_values(a);
    REQUIRE(v.phi);
    CHECK(*v.phi == doctest::Approx(phi_oracle(a)).epsilon(1e-12));
    CHECK(*v.d == doctest::Approx(entropy_h(*v.phi)));
    CHECK(v.gamma == doctest::Approx(-std::log(std::max(a, std::fabs(1 - 2 * a))) / std::log(3.0)));
  }
  const auto t = characteristic_values(1.0 / 3.0);
  CHECK(*t.phi == doctest::Approx(1.0 / 3.0));
  CHECK(!t.c0);
  CHECK(*t.d_tilde == doctest::Approx(1.0));
  CHECK(!characteristic_values(0.7).phi);
  CHECK(*characteristic_values(0.0).phi == 1.0);
}

TEST_CASE("phi bracketing") {
  for (int i = 1; i < 200; ++i) {
    const double a = i / 600.0;  // (0, 1/3)
    CHECK(1.0 / 3.0 < phi(a));
    CHECK(phi(a) < 1 - 2 * a);
    const double b = 1.0 / 3.0 + i / 1200.0;  // (1/3, 1/2)
    if (b >= 0.5) continue;
    CHECK(1 - 2 * b < phi(b));
    CHECK(phi(b) < 1.0 / 3.0);
  }
}

TEST_CASE("special constants and regimes") {
  const auto s = special_constants();
  CHECK(std::fabs(54 * s.a0 * s.a0 * s.a0 - 27 * s.a0 * s.a0 - 1) <= 1e-12);
  CHECK(s.a0 == doctest::Approx(0.5592).epsilon(1e-4));
  CHECK(s.a_hat == doctest::Approx(0.5595).epsilon(1e-4));
  CHECK(s.a0 < s.a_hat);
  CHECK(s.inv_golden == doctest::Approx((std::sqrt(5.0) - 1) / 2));
  CHECK(s.a_hat_tail < 1e-14);
  // Thue-Morse prefix 0 1 1 0 1 0 0 1.
  const int tm[8] = {0, 1, 1, 0, 1, 0, 0, 1};
  for (int j = 0; j < 8; ++j) CHECK(thue_morse(static_cast<std::uint64_t>(j)) == tm[j]);
  CHECK(univoque_regime(0.7) == Regime::Empty);
  CHECK(univoque_regime(0.6) == Regime::CountableRational);
  CHECK(univoque_regime(s.a_hat) == Regime::DimensionZero);
  CHECK(univoque_regime(0.55) == Regime::PositiveDimension);
  CHECK_THROWS_AS((void)univoque_regime(0.4), Error);
}

TEST_CASE("finite derivative at a = 1/2") {
  CHECK(fin(1, 0.5, "P:|1") == Verdict::FiniteZero);
  CHECK(fin(1, 0.5, "F:112") == Verdict::FiniteZero);
  CHECK(fin(1, 0.5, "F:11") == Verdict::NotDifferentiable);
  CHECK(fin(2, 0.5, "P:1|02") == Verdict::NotDifferentiable);
  CHECK(fin(2, 0.5, "P:111|02") == Verdict::FiniteZero);
}

TEST_CASE("finite derivative by ones frequency") {
  CHECK(fin(1, 0.2, "P:|02") == Verdict::FiniteZero);
  CHECK(fin(3, 0.2, "P:|1") == Verdict::NotDifferentiable);
  CHECK(fin(1, 0.4, "P:|1") == Verdict::FiniteZero);
  CHECK(fin(1, 0.4, "P:|02") == Verdict::NotDifferentiable);
  CHECK(fin(2, 0.6, "P:|1") == Verdict::FiniteZero);
  CHECK(fin(2, 0.6, "P:|0112") == Verdict::NotDifferentiable);
  CHECK(fin(1, 0.7, "P:|1") == Verdict::NotDifferentiable);
  CHECK(fin(1, 1.0 / 3.0, "P:|1") == Verdict::NotDifferentiable);
  CHECK(fin(1, 0.2, "F:0") == Verdict::Inconclusive);
}

TEST_CASE("infinite derivative for a < 1/2 by frequency") {
  CHECK(inf(1, 0.2, "P:|1") == Verdict::MinusInfinity);
  CHECK(inf(2, 0.2, "P:|1") == Verdict::PlusInfinity);
  CHECK(inf(1, 0.2, "P:|01") == Verdict::PlusInfinity);
  CHECK(inf(1, 0.2, "P:|02") == Verdict::NotDifferentiable);
  CHECK(inf(1, 0.4, "P:|02") == Verdict::PlusInfinity);
  CHECK(inf(1, 0.4, "P:|0122") == Verdict::MinusInfinity);
  CHECK(inf(2, 0.4, "P:|0122") == Verdict::PlusInfinity);
  CHECK(inf(1, 0.4, "P:|01") == Verdict::NotDifferentiable);
  CHECK(inf(1, 1.0 / 3.0, "P:|02") == Verdict::PlusInfinity);
  CHECK(inf(3, 1.0 / 3.0, "P:|1") == Verdict::MinusInfinity);
}

TEST_CASE("band rule on targeted generated sources") {
  const double a = 0.25;  // thresholds for k = 2 are +-1/2
  auto at = [&](double c) { return classify_infinite(2, a, DigitSource::generated(DeltaTargetRule{a, c}, 3)); };
  const auto mid = at(0.0);
  CHECK(mid.verdict == Verdict::MinusInfinity);
  CHECK_FALSE(mid.exact);
  CHECK(at(1.0).verdict == Verdict::PlusInfinity);
  CHECK(at(-1.0).verdict == Verdict::PlusInfinity);
  // k = 3: thresholds -c', 0, c' with c' = sqrt(6a(1-2a)) ~ 0.866.
  auto at3 = [&](double c) { return classify_infinite(3, a, DigitSource::generated(DeltaTargetRule{a, c}, 3)).verdict; };
  CHECK(at3(-0.4) == Verdict::PlusInfinity);
  CHECK(at3(0.4) == Verdict::MinusInfinity);
  CHECK(at3(1.5) == Verdict::PlusInfinity);
  CHECK(at3(-1.5) == Verdict::MinusInfinity);
}

TEST_CASE("exact sources at the critical frequency sit on a threshold for odd k") {
  CHECK(inf(1, 0.25, "P:|01") == Verdict::Inconclusive);
  CHECK(inf(2, 0.25, "P:|01") == Verdict::MinusInfinity);
}

TEST_CASE("infinite derivative at a = 1/2") {
  CHECK(inf(1, 0.5, "P:1|02") == Verdict::MinusInfinity);
  CHECK(inf(2, 0.5, "P:1|02") == Verdict::MinusInfinity);
  CHECK(inf(2, 0.5, "P:11|02") == Verdict::PlusInfinity);
  CHECK(inf(1, 0.5, "P:|02") == Verdict::PlusInfinity);
  CHECK(inf(1, 0.5, "F:1") == Verdict::NotDifferentiable);
  CHECK(inf(1, 0.5, "P:11|02") == Verdict::NotDifferentiable);
  CHECK(both(1, 0.5, "P:|02") == Verdict::PlusInfinity);
  // Generated: bounded runs and no ones.
  const auto br = DigitSource::generated(BoundedRunRule{3, FreeDigits::Random}, 4);
  CHECK(classify_infinite(2, 0.5, br).verdict == Verdict::PlusInfinity);
}

TEST_CASE("infinite derivative for a > 1/2 by tail sums") {
  CHECK(inf(1, 0.6, "P:|20") == Verdict::PlusInfinity);
  CHECK(both(1, 0.6, "P:|20") == Verdict::PlusInfinity);
  CHECK(inf(1, 0.6, "P:1|20") == Verdict::MinusInfinity);
  CHECK(inf(1, 0.6, "P:|0002") == Verdict::NotDifferentiable);
  CHECK(inf(1, 0.55, "P:|0022") == Verdict::PlusInfinity);
  CHECK(inf(1, 0.7, "P:|20") == Verdict::NotDifferentiable);
  CHECK(inf(1, 0.6, "P:|01") == Verdict::NotDifferentiable);
  CHECK(inf(1, special_constants().inv_golden, "P:|20") == Verdict::Inconclusive);
  const auto pc = classify_infinite(1, 0.6, DigitSource::parse("P:|20"));
  CHECK(*pc.l_plus == doctest::Approx(0.6 / (1 - 0.36)));
  CHECK(*pc.ones == 0);
}

TEST_CASE("limsup tail sums") {
  const auto x = DigitSource::parse("P:|220");
  const double a = 0.58;
  const double want = (a + a * a) / (1 - a * a * a);
  CHECK(limsup_L(a, x, TailDigit::Two).value == doctest::Approx(want));
  CHECK(limsup_L(a, DigitSource::parse("F:2"), TailDigit::Zero).value == doctest::Approx(a / (1 - a)));
  const auto g = DigitSource::generated(BoundedRunRule{2, FreeDigits::Random}, 1);  // alternating 2 0
  const auto lg = limsup_L(a, g, TailDigit::Two, 4096);
  CHECK_FALSE(lg.exact);
  CHECK(lg.value == doctest::Approx(a / (1 - a * a)).epsilon(1e-9));
  CHECK_THROWS_AS((void)limsup_L(a, DigitSource::parse("P:|1"), TailDigit::Two), Error);
}

TEST_CASE("boundary points separate consecutive orders") {
  for (int k : {1, 2}) {
    for (double a : {0.15, 0.25}) {
      const auto x = boundary_point(k, a, 0.5, 7);
      const auto here = classify_finite(k, a, x);
      CHECK(here.verdict == Verdict::FiniteZero);
      CHECK_FALSE(here.exact);
      CHECK(classify_finite(k + 1, a, x).verdict != Verdict::FiniteZero);
    }
  }
  CHECK_THROWS_AS((void)boundary_point(1, 0.4, 0.5), Error);
}

TEST_CASE("property: symmetry of infinite-derivative verdicts") {
  for (int trial = 0; trial < 300; ++trial) {
    const auto q = oracle::integer(2, 120);
    const auto p = oracle::integer(1, q - 1);
    const auto x = DigitSource::from_rational(p, q);
    const int k = static_cast<int>(oracle::integer(1, 4));
    const double grid[] = {0.15, 0.25, 1.0 / 3.0, 0.4, 0.5, 0.55, 0.6, 0.8};
    const double a = grid[oracle::integer(0, 7)];
    CHECK(classify_infinite(k, a, x).verdict == classify_infinite(k, a, x.reflected()).verdict);
  }
}

TEST_CASE("property: finite-derivative sets are nested in k") {
  for (int trial = 0; trial < 300; ++trial) {
    const auto q = oracle::integer(2, 200);
    const auto p = oracle::integer(1, q - 1);
    const auto x = DigitSource::from_rational(p, q);
    const double grid[] = {0.1, 0.2, 0.3, 0.4, 0.45, 0.5, 0.55, 0.6};
    const double a = grid[oracle::integer(0, 7)];
    for (int k = 1; k <= 4; ++k) {
      if (classify_finite(k + 1, a, x).verdict == Verdict::FiniteZero)
        CHECK(classify_finite(k, a, x).verdict == Verdict::FiniteZero);
    }
  }
}

TEST_CASE("domain errors") {
  const auto x = DigitSource::parse("P:|01");
  CHECK_THROWS_AS((void)classify(0, 0.3, x), Error);
  CHECK_THROWS_AS((void)classify(1, 1.3, x), Error);
  CHECK(verdict_name(Verdict::MinusInfinity) == "MinusInfinity");
}
