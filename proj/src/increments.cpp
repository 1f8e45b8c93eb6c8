// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include "okamoto/increments.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <limits>

#include "okamoto/error.hpp"
#include "okamoto/evaluator.hpp"

namespace okamoto {

namespace {

void require_k(int k) {
  require(k >= 0 && k <= kMaxOrder, ErrorCode::Domain, "derivative order out of range: " + std::to_string(k));
}

template <class T>
T falling(const T& x, int i) {
  T r(1);
  for (int t = 0; t < i; ++t) r *= (x - T(t));
  return r;
}

template <class T>
T ipow(T base, int e) {
  T r(1);
  for (int t = 0; t < e; ++t) r *= base;
  return r;
}

double binom(int k, int i) {
  double c = 1.0;
  for (int t = 1; t <= i; ++t) c = c * (k - i + t) / t;
  return c;
}

double log_falling(unsigned x, int i) {
  double s = 0.0;
  for (int t = 0; t < i; ++t) s += std::log(static_cast<double>(x) - t);
  return s;
}

template <class T>
T p_generic(int k, const T& a, const T& n, const T& l) {
  T sum(0);
  const T one_m2a = T(1) - T(2) * a;
  for (int i = 0; i <= k; ++i) {
    sum += T(binom(k, i)) * falling<T>(n - l, i) * falling<T>(l, k - i) * ipow<T>(a, k - i) * ipow<T>(one_m2a, i) *
           ipow<T>(T(-2), k - i);
  }
  return sum;
}

template <class T>
T leibniz_direct(int k, const T& a, unsigned n, unsigned l) {
  T sum(0);
  const T one_m2a = T(1) - T(2) * a;
  for (int i = 0; i <= k; ++i) {
    const int ea = static_cast<int>(n) - static_cast<int>(l) - i;
    const int eb = static_cast<int>(l) - k + i;
    if (ea < 0 || eb < 0) continue;  // the falling factorial vanishes
    sum += T(binom(k, i)) * falling<T>(T(n - l), i) * ipow<T>(a, ea) * falling<T>(T(l), k - i) * ipow<T>(one_m2a, eb) *
           ipow<T>(T(-2), k - i);
  }
  return sum;
}

// Coefficients of P_k as a polynomial in a, ascending.
std::vector<double> p_poly(int k, double n, double l) {
  std::vector<double> p{1.0};
  for (int j = 0; j < k; ++j) {
    std::vector<double> next(p.size() + 1, 0.0);
    // a(1-2a) p'
    for (std::size_t i = 1; i < p.size(); ++i) {
      const double d = static_cast<double>(i) * p[i];
      next[i] += d;
      next[i + 1] -= 2.0 * d;
    }
    // ((n - l - j) + (4j - 2n) a) p
    const double c0 = n - l - j;
    const double c1 = 4.0 * j - 2.0 * n;
    for (std::size_t i = 0; i < p.size(); ++i) {
      next[i] += c0 * p[i];
      next[i + 1] += c1 * p[i];
    }
    p = std::move(next);
  }
  return p;
}

double horner(const std::vector<double>& p, double a) {
  double v = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) v = v * a + *it;
  return v;
}

// Value and magnitude scale of P_k (the sum of |terms|), in long double.
struct Scaled {
  long double value = 0;
  long double scale = 0;
};

Scaled p_scaled(int k, long double a, long double n, long double l) {
  Scaled s;
  for (int i = 0; i <= k; ++i) {
    const long double t = static_cast<long double>(binom(k, i)) * falling<long double>(n - l, i) *
                          falling<long double>(l, k - i) * ipow<long double>(a, k - i) *
                          ipow<long double>(1 - 2 * a, i) * ipow<long double>(-2, k - i);
    s.value += t;
    s.scale += std::fabs(t);
  }
  return s;
}

// d/da of the polynomial p, with the matching magnitude scale.
Scaled poly_derivative(const std::vector<double>& p, long double a) {
  Scaled s;
  long double pw = 1;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const long double t = static_cast<long double>(i) * p[i] * pw;
    s.value += t;
    s.scale += std::fabs(t);
    pw *= a;
  }
  return s;
}

double rel(long double residual, std::initializer_list<long double> scales) {
  long double m = 1;
  for (long double v : scales) m = std::max(m, v);
  return static_cast<double>(std::fabs(residual) / m);
}

}  // namespace

TernaryInterval TernaryInterval::make(unsigned n, std::uint64_t j) {
  require(n >= 1, ErrorCode::Domain, "interval depth must be >= 1");
  require(j < pow3(n), ErrorCode::Domain, "interval index must satisfy j < 3^n");
  return TernaryInterval{n, j, ones_of(j)};
}

TernaryInterval TernaryInterval::with_ones(unsigned n, unsigned l) {
  require(n >= 1 && l <= n, ErrorCode::Domain, "need n >= 1 and 0 <= l <= n");
  return TernaryInterval{n, 0, l};
}

IncrementValue delta_general(int k, double a, const TernaryInterval& iv) {
  require_k(k);
  require_parameter(a);
  require(!param_eq(a, 0.5), ErrorCode::Domain, "delta_general needs a != 1/2; use delta_half");
  const unsigned n = iv.n;
  const unsigned l = iv.l;
  const double la = std::log(a);
  const double lb = std::log(std::fabs(1.0 - 2.0 * a));
  const int sb = 1.0 - 2.0 * a > 0 ? 1 : -1;

  std::vector<std::pair<double, int>> terms;  // (log|t|, sign)
  for (int i = 0; i <= k; ++i) {
    if (static_cast<unsigned>(i) > n - l || static_cast<unsigned>(k - i) > l) continue;
    const int eb = static_cast<int>(l) - k + i;
    const double lg = std::log(binom(k, i)) + log_falling(n - l, i) + (static_cast<double>(n - l) - i) * la +
                      log_falling(l, k - i) + eb * lb + (k - i) * std::log(2.0);
    int s = ((k - i) % 2 == 0) ? 1 : -1;
    if (sb < 0 && (eb % 2 != 0)) s = -s;
    terms.emplace_back(lg, s);
  }
  IncrementValue v;
  v.p_value = p_value(k, a, n, l);
  if (terms.empty()) {
    v.log_magnitude = -std::numeric_limits<double>::infinity();
    return v;
  }
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& t : terms) top = std::max(top, t.first);
  // Comfortably inside the double range: sum directly in extended precision,
  // which keeps the relative error near long double epsilon.
  if (top > -600.0 && top < 600.0) {
    const long double direct = leibniz_direct<long double>(k, static_cast<long double>(a), n, l);
    if (direct == 0) {
      v.log_magnitude = -std::numeric_limits<double>::infinity();
      return v;
    }
    v.sign = direct > 0 ? 1 : -1;
    v.delta = static_cast<double>(direct);
    v.delta_lo = static_cast<double>(direct - static_cast<long double>(v.delta));
    v.log_magnitude = static_cast<double>(std::log(std::fabs(direct)));
    return v;
  }
  double acc = 0.0;
  for (const auto& t : terms) acc += t.second * std::exp(t.first - top);
  if (acc == 0.0) {
    v.log_magnitude = -std::numeric_limits<double>::infinity();
    return v;
  }
  v.sign = acc > 0 ? 1 : -1;
  v.log_magnitude = top + std::log(std::fabs(acc));
  v.delta = v.sign * std::exp(v.log_magnitude);
  return v;
}

double delta_leibniz_direct(int k, double a, unsigned n, unsigned l) {
  require_k(k);
  require(l <= n, ErrorCode::Domain, "need l <= n");
  return leibniz_direct<double>(k, a, n, l);
}

Rational delta_leibniz_direct(int k, const Rational& a, unsigned n, unsigned l) {
  require_k(k);
  require(l <= n, ErrorCode::Domain, "need l <= n");
  return leibniz_direct<Rational>(k, a, n, l);
}

double p_value(int k, double a, unsigned n, unsigned l) {
  require_k(k);
  require(l <= n, ErrorCode::Domain, "need l <= n");
  return p_generic<double>(k, a, static_cast<double>(n), static_cast<double>(l));
}

Rational p_value(int k, const Rational& a, const Rational& n, const Rational& l) {
  require_k(k);
  return p_generic<Rational>(k, a, n, l);
}

double p_value_by_recursion(int k, double a, unsigned n, unsigned l) {
  require_k(k);
  require(l <= n, ErrorCode::Domain, "need l <= n");
  return horner(p_poly(k, n, l), a);
}

double r_value(int k, double a, unsigned n, unsigned l) {
  const double lead = std::pow((1.0 - 2.0 * a) * n - static_cast<double>(l), k);
  return p_value(k, a, n, l) - lead;
}

Rational r_value(int k, const Rational& a, const Rational& n, const Rational& l) {
  return p_value(k, a, n, l) - ipow(Rational((1 - 2 * a) * n - l), k);
}

double RecursionReport::max_residual() const { return std::max({residual_n, residual_nl, residual_a}); }

RecursionReport check_recursions(int k, double a, unsigned n, unsigned l) {
  require(k >= 1, ErrorCode::Domain, "check_recursions needs k >= 1");
  require_k(k);
  require_parameter(a);
  require(l <= n, ErrorCode::Domain, "need l <= n");
  // Residuals are relative to the magnitude of the terms that cancel in each identity.
  const long double A = a;
  const long double N = n;
  const long double L = l;
  const long double b = 1 - 2 * A;
  const Scaled pk = p_scaled(k, A, N, L);
  const Scaled pk1 = p_scaled(k - 1, A, N, L);
  RecursionReport r;

  const Scaled up_n = p_scaled(k, A, N + 1, L);
  r.residual_n = rel(up_n.value - pk.value - k * b * pk1.value, {up_n.scale, pk.scale, k * std::fabs(b) * pk1.scale});

  const Scaled up_nl = p_scaled(k, A, N + 1, L + 1);
  r.residual_nl = rel(up_nl.value - pk.value + 2 * k * A * pk1.value, {up_nl.scale, pk.scale, 2 * k * A * pk1.scale});

  const Scaled dp = poly_derivative(p_poly(k - 1, n, l), A);
  const long double lin = b * N - L - (1 - 4 * A) * (k - 1);
  const long double rhs = A * b * dp.value + lin * pk1.value;
  r.residual_a = rel(pk.value - rhs, {pk.scale, std::fabs(A * b) * dp.scale, std::fabs(lin) * pk1.scale});
  return r;
}

double delta_half(int k, unsigned n, std::uint64_t j) {
  require_k(k);
  const TernaryInterval iv = TernaryInterval::make(n, j);
  require(static_cast<int>(n) >= k, ErrorCode::Domain,
          "delta_half needs n >= k (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  if (static_cast<int>(iv.l) > k) return 0.0;
  const int l = static_cast<int>(iv.l);
  double v = 1.0;
  for (int t = 0; t < l; ++t) v *= (k - t);                 // k!/(k-l)!
  for (int t = 0; t < k - l; ++t) v *= (n - l - t);         // (n-l)!/(n-k)!
  v *= std::ldexp(1.0, k - static_cast<int>(n));            // (1/2)^(n-k)
  v *= std::ldexp(l % 2 == 0 ? 1.0 : -1.0, l);              // (-2)^l
  return v;
}

double osc_bound(int k, double a, const TernaryInterval& iv) {
  require_k(k);
  require_parameter(a);
  require(!param_eq(a, 0.5), ErrorCode::Domain, "osc_bound needs a != 1/2; use |delta_half| via box containment");
  const double b = std::max(a, std::fabs(1.0 - 2.0 * a));
  const double lw = (static_cast<double>(iv.n) - iv.l) * std::log(a) +
                    static_cast<double>(iv.l) * std::log(std::fabs(1.0 - 2.0 * a)) - iv.n * std::log(b);
  return 2.0 * std::exp(lw) * tail_bound(k, a, iv.n);
}

bool box_containment_check(int k, unsigned n, std::uint64_t j) {
  require_k(k);
  require(n >= 1 && static_cast<int>(n) >= 2 * k - 1, ErrorCode::Domain,
          "box containment needs n >= 2k-1 and n >= 1 (got n=" + std::to_string(n) + ", k=" + std::to_string(k) + ")");
  require(j < pow3(n), ErrorCode::Domain, "interval index must satisfy j < 3^n");
  const unsigned depth = n + 3;
  const std::uint64_t base = j * 27;
  const double left = exact_at_rational(k, 0.5, depth, base);
  const double right = exact_at_rational(k, 0.5, depth, base + 27);
  const double lo = std::min(left, right);
  const double hi = std::max(left, right);
  const double slack = 1e-12 * std::max({1.0, std::fabs(left), std::fabs(right)});
  for (std::uint64_t i = 1; i < 27; ++i) {
    const double v = exact_at_rational(k, 0.5, depth, base + i);
    if (v < lo - slack || v > hi + slack) return false;
  }
  return true;
}

unsigned find_alternation_start(int k, double a, unsigned n_max) {
  require_k(k);
  require(a > 0.5 && a < 1.0, ErrorCode::Domain, "sign alternation is a property of a in (1/2, 1)");
  for (unsigned n = n_max; n >= 1; --n) {
    int sign = 0;
    bool constant = true;
    for (unsigned l = 0; l <= n && constant; ++l) {
      const double p = p_value(k, a, n, l);
      const int s = p > 0 ? 1 : (p < 0 ? -1 : 0);
      if (s == 0 || (sign != 0 && s != sign)) constant = false;
      sign = s;
    }
    if (!constant) return n;
  }
  return 0;
}

}  // namespace okamoto
