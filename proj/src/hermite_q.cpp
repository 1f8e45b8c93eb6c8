// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include "okamoto/hermite_q.hpp"

#include <cmath>

#include "okamoto/error.hpp"

namespace okamoto {

namespace {

constexpr int kMaxDegree = 60;

long double horner(const std::vector<long double>& c, long double t) {
  long double v = 0.0L;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * t + *it;
  return v;
}

std::vector<long double> as_long_double(const QPolynomial& q) {
  std::vector<long double> c;
  c.reserve(q.coeffs.size());
  for (const auto& v : q.coeffs) c.push_back(v.convert_to<long double>());
  return c;
}

int sgn(long double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

}  // namespace

long double QPolynomial::operator()(long double t) const { return horner(as_long_double(*this), t); }

QPolynomial q_poly(int k) {
  require(k >= 1 && k <= kMaxDegree, ErrorCode::Domain, "q_k needs 1 <= k <= " + std::to_string(kMaxDegree));
  std::vector<BigInt> c{0, 1};
  for (int d = 1; d < k; ++d) {
    std::vector<BigInt> next(c.size() + 1, 0);
    for (std::size_t i = 0; i < c.size(); ++i) next[i + 1] += c[i];        // t q
    for (std::size_t i = 1; i < c.size(); ++i) next[i - 1] -= c[i] * static_cast<long>(i);  // -q'
    c = std::move(next);
  }
  return QPolynomial{k, std::move(c)};
}

std::vector<double> q_roots(int k) {
  require(k >= 1 && k <= kMaxDegree, ErrorCode::Domain, "q_k needs 1 <= k <= " + std::to_string(kMaxDegree));
  std::vector<long double> roots{0.0L};
  for (int d = 2; d <= k; ++d) {
    const QPolynomial q = q_poly(d);
    const auto c = as_long_double(q);
    long double bound = 0.0L;  // Cauchy bound for a monic polynomial
    for (std::size_t i = 0; i + 1 < c.size(); ++i) bound = std::max(bound, std::fabs(c[i]));
    bound += 1.0L;
    std::vector<long double> edges;
    edges.push_back(-bound);
    edges.insert(edges.end(), roots.begin(), roots.end());
    edges.push_back(bound);
    std::vector<long double> next;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
      long double lo = edges[i];
      long double hi = edges[i + 1];
      int slo = sgn(horner(c, lo));
      const int shi = sgn(horner(c, hi));
      require(slo != 0 && shi != 0 && slo != shi, ErrorCode::Internal,
              "lost the root bracket for q_" + std::to_string(d) + " between consecutive roots of q_" +
                  std::to_string(d - 1));
      for (int it = 0; it < 200 && hi - lo > 1e-18L * std::max(1.0L, std::fabs(lo)); ++it) {
        const long double mid = 0.5L * (lo + hi);
        const int sm = sgn(horner(c, mid));
        if (sm == 0) {
          lo = hi = mid;
          break;
        }
        if (sm == slo) lo = mid;
        else hi = mid;
      }
      long double r = 0.5L * (lo + hi);
      // Safeguarded Newton polish: accept only steps that stay inside the bracket.
      std::vector<long double> dc;
      for (std::size_t j = 1; j < c.size(); ++j) dc.push_back(c[j] * static_cast<long double>(j));
      for (int it = 0; it < 3; ++it) {
        const long double fp = horner(dc, r);
        if (fp == 0.0L) break;
        const long double step = r - horner(c, r) / fp;
        if (step < edges[i] || step > edges[i + 1]) break;
        r = step;
      }
      next.push_back(r);
    }
    roots = std::move(next);
  }
  return std::vector<double>(roots.begin(), roots.end());
}

ThresholdSet thresholds(int k, double a) {
  require(a > 0.0 && a < 0.5, ErrorCode::Domain, "thresholds need a in (0, 1/2)");
  ThresholdSet t;
  t.roots = q_roots(k);
  const double s = std::sqrt(2.0 * a * (1.0 - 2.0 * a));
  for (double r : t.roots) t.scaled.push_back(r * s);
  return t;
}

}  // namespace okamoto
