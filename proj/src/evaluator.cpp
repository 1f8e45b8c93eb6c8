// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include "okamoto/evaluator.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include "jet.hpp"
#include "okamoto/error.hpp"

namespace okamoto {

using detail::Jet;

namespace {

void require_order(int k) {
  require(k >= 0 && k <= kMaxOrder, ErrorCode::Domain,
          "derivative order must lie in [0, " + std::to_string(kMaxOrder) + "], got " + std::to_string(k));
}

bool is_one(const DigitSource& x) {
  return x.kind() == DigitSource::Kind::EventuallyPeriodic && x.preperiod().empty() && x.period().size() == 1 &&
         x.period()[0] == 2;
}

// Per-term bound  K b^n (alpha n + beta)^k  in log form.
struct TermBound {
  double log_k = 0.0;
  double b = 0.0;
  double alpha = 0.0;
  double beta = 1.0;
  int k = 0;

  double log_term(double n) const { return log_k + n * std::log(b) + k * std::log(alpha * n + beta); }
  double ratio(double n) const { return b * std::pow((alpha * (n + 1) + beta) / (alpha * n + beta), k); }
};

TermBound term_bound(int k, double a) {
  TermBound t;
  t.k = k;
  if (param_eq(a, 0.5)) {
    t.b = 0.5;
    t.alpha = 2.0;
    t.log_k = std::lgamma(k + 1.0) + k * std::log(4.0);
  } else {
    t.b = std::max(a, std::fabs(1.0 - 2.0 * a));
    t.alpha = 1.0 / a + 2.0 / std::fabs(1.0 - 2.0 * a);
  }
  return t;
}

}  // namespace

SeriesWeights series_weights(double a) {
  require_parameter(a);
  SeriesWeights w;
  w.q0 = 0.0;
  w.q1 = a;
  w.q2 = 1.0 - a;
  w.b = std::max(a, std::fabs(1.0 - 2.0 * a));
  w.gamma = -std::log(w.b) / std::log(3.0);
  return w;
}

double tail_bound(int k, double a, std::size_t m) {
  require_order(k);
  require_parameter(a);
  const TermBound t = term_bound(k, a);
  const double knee = 0.5 * (1.0 + t.b);
  double n = static_cast<double>(m);
  double sum = 0.0;
  for (;;) {
    const double rho = t.ratio(n);
    const double term = std::exp(t.log_term(n));
    if (rho <= knee) return sum + term / (1.0 - rho);
    sum += term;
    n += 1.0;
  }
}

double series_partial_sum(int k, double a, const DigitSource& x, std::size_t terms) {
  require_order(k);
  require_parameter(a);
  const Digits ds = x.prefix(terms);
  Jet<double> w(k, 1.0);
  Jet<double> s(k, 0.0);
  for (Digit d : ds) {
    const auto q = detail::qdigit<double>(d, a);
    s.add_linear_product(w, q[0], q[1]);
    const auto al = detail::alpha<double>(d, a);
    w.mul_linear(al[0], al[1]);
  }
  return s.derivative();
}

EvalResult partial_M(int k, double a, const DigitSource& x, double tol) {
  require_order(k);
  require_parameter(a);
  require(tol > 0.0 && std::isfinite(tol), ErrorCode::Domain, "tolerance must be positive");
  EvalResult r;
  if (is_one(x)) {
    r.value = k == 0 ? 1.0 : 0.0;
    r.exact = true;
    return r;
  }
  if (x.kind() == DigitSource::Kind::Finite) {
    r.terms = x.terminal_length();
    r.value = series_partial_sum(k, a, x, r.terms);
    r.exact = true;
    return r;
  }
  // Smallest m with tail_bound(k, a, m) <= tol: doubling, then bisection.
  std::size_t hi = 1;
  while (tail_bound(k, a, hi) > tol) {
    if (hi >= kMaxTerms) {
      std::ostringstream msg;
      msg << "tolerance " << tol << " unreachable within " << kMaxTerms << " terms; best bound "
          << tail_bound(k, a, kMaxTerms);
      fail(ErrorCode::Tolerance, msg.str());
    }
    hi = std::min(hi * 2, kMaxTerms);
  }
  std::size_t lo = hi / 2;
  while (lo + 1 < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    (tail_bound(k, a, mid) <= tol ? hi : lo) = mid;
  }
  r.terms = hi;
  r.err_bound = tail_bound(k, a, hi);
  r.value = series_partial_sum(k, a, x, hi);
  return r;
}

EvalResult okamoto_F(double a, const DigitSource& x, double tol) { return partial_M(0, a, x, tol); }

double exact_at_digits(int k, double a, std::span<const Digit> digits) {
  require_order(k);
  require_parameter(a);
  Jet<double> w(k, 1.0);
  Jet<double> s(k, 0.0);
  for (Digit d : digits) {
    require(d <= 2, ErrorCode::Domain, "ternary digits must be 0, 1 or 2");
    const auto q = detail::qdigit<double>(d, a);
    s.add_linear_product(w, q[0], q[1]);
    const auto al = detail::alpha<double>(d, a);
    w.mul_linear(al[0], al[1]);
  }
  return s.derivative();
}

double exact_at_rational(int k, double a, unsigned n, std::uint64_t j) {
  const std::uint64_t top = pow3(n);
  require(j <= top, ErrorCode::Domain, "index j must satisfy 0 <= j <= 3^n");
  if (j == top) {
    require_order(k);
    require_parameter(a);
    return k == 0 ? 1.0 : 0.0;
  }
  const Digits ds = base3_digits(j, n);
  return exact_at_digits(k, a, ds);
}

EvalResult eval_via_FE(int k, double a, const DigitSource& x, std::size_t depth) {
  require_order(k);
  require_parameter(a);
  require(depth >= 1, ErrorCode::Domain, "functional-equation depth must be >= 1");
  const auto K = static_cast<std::size_t>(k + 1);
  // v(x) = c + L v(sigma^depth x), v = (M_0, ..., M_k); only row k of L is needed.
  std::vector<double> row(K, 0.0);
  row[K - 1] = 1.0;
  double value = 0.0;
  const Digits ds = x.prefix(depth);
  for (Digit d : ds) {
    const auto q = detail::qdigit<double>(d, a);
    const auto al = detail::alpha<double>(d, a);
    // c += row . c_d, with c_d = (q, q', 0, ...)
    value += row[0] * q[0] + (K > 1 ? row[1] * q[1] : 0.0);
    // row <- row . A_d, A_d[j][j] = alpha, A_d[j][j-1] = j alpha'
    std::vector<double> next(K, 0.0);
    for (std::size_t j = 0; j < K; ++j) {
      next[j] += row[j] * al[0];
      if (j > 0) next[j - 1] += row[j] * static_cast<double>(j) * al[1];
    }
    row = std::move(next);
  }
  EvalResult r;
  r.value = value;
  r.terms = depth;
  const bool tail_is_zero = (x.kind() == DigitSource::Kind::Finite && depth >= x.terminal_length());
  if (tail_is_zero) {
    r.exact = true;
    return r;
  }
  for (std::size_t j = 0; j < K; ++j) r.err_bound += std::fabs(row[j]) * tail_bound(static_cast<int>(j), a, 0);
  return r;
}

std::vector<double> grid_values(int k, double a, unsigned depth) {
  require_order(k);
  require_parameter(a);
  require(depth <= 16, ErrorCode::Budget, "grid depth above 16 exceeds the evaluation budget");
  const std::uint64_t n = pow3(depth);
  std::vector<double> out(n + 1, 0.0);
  out[n] = k == 0 ? 1.0 : 0.0;

  struct Walker {
    int k;
    double a;
    unsigned depth;
    double* out;
    std::array<std::array<double, 2>, 3> al{}, q{};

    void run(unsigned level, std::uint64_t index, const Jet<double>& v, const Jet<double>& w) const {
      if (level == depth) {
        out[index] = v.derivative();
        return;
      }
      for (int d = 0; d < 3; ++d) {
        Jet<double> v2 = v;
        v2.add_linear_product(w, q[d][0], q[d][1]);
        Jet<double> w2 = w;
        w2.mul_linear(al[d][0], al[d][1]);
        run(level + 1, index * 3 + static_cast<std::uint64_t>(d), v2, w2);
      }
    }
  };
  Walker walk{k, a, depth, out.data(), {}, {}};
  for (int d = 0; d < 3; ++d) {
    walk.al[d] = detail::alpha<double>(d, a);
    walk.q[d] = detail::qdigit<double>(d, a);
  }
  const Jet<double> v0(k, 0.0);
  const Jet<double> w0(k, 1.0);
  if (depth < 8) {
    walk.run(0, 0, v0, w0);
    return out;
  }
  // Each top-level subtree writes a disjoint slice, so the result does not
  // depend on scheduling.
  {
    std::vector<std::jthread> workers;
    for (int d = 0; d < 3; ++d) {
      workers.emplace_back([&walk, &v0, &w0, d] {
        Jet<double> v = v0;
        v.add_linear_product(w0, walk.q[d][0], walk.q[d][1]);
        Jet<double> w = w0;
        w.mul_linear(walk.al[d][0], walk.al[d][1]);
        walk.run(1, static_cast<std::uint64_t>(d), v, w);
      });
    }
  }
  return out;
}

}  // namespace okamoto
