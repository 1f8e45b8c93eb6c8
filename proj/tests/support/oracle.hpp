// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
//
// Reference computations for the tests. Nothing here calls into the library's
// numerics; the only shared code is the digit container type.
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <cstdint>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using Q = boost::multiprecision::cpp_rational;
using Z = boost::multiprecision::cpp_int;
using Wide = boost::multiprecision::cpp_bin_float_quad;

// Polynomial in a with rational coefficients, ascending powers.
struct Poly {
  std::vector<Q> c;

  static Poly constant(const Q& v) { return Poly{{v}}; }
  static Poly linear(const Q& c0, const Q& c1) { return Poly{{c0, c1}}; }

  Poly operator*(const Poly& o) const {
    if (c.empty() || o.c.empty()) return Poly{};
    Poly r;
    r.c.assign(c.size() + o.c.size() - 1, Q(0));
    for (std::size_t i = 0; i < c.size(); ++i)
      for (std::size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    return r;
  }
  Poly& operator+=(const Poly& o) {
    if (o.c.size() > c.size()) c.resize(o.c.size(), Q(0));
    for (std::size_t i = 0; i < o.c.size(); ++i) c[i] += o.c[i];
    return *this;
  }
  Poly derivative(int k) const {
    Poly r = *this;
    for (int t = 0; t < k; ++t) {
      if (r.c.size() <= 1) return Poly{};
      Poly d;
      d.c.resize(r.c.size() - 1);
      for (std::size_t i = 1; i < r.c.size(); ++i) d.c[i - 1] = r.c[i] * static_cast<long>(i);
      r = std::move(d);
    }
    return r;
  }
  Q operator()(const Q& a) const {
    Q v(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * a + *it;
    return v;
  }
};

// F_a at the terminating expansion 0.d_1 d_2 ... d_N as an exact polynomial in a.
inline Poly f_polynomial(const std::vector<int>& digits) {
  const Poly a = Poly::linear(0, 1);
  const Poly one_m2a = Poly::linear(1, -2);
  const Poly q[3] = {Poly{}, a, Poly::linear(1, -1)};
  Poly weight = Poly::constant(1);
  Poly sum;
  for (int d : digits) {
    sum += weight * q[d];
    weight = weight * (d == 1 ? one_m2a : a);
  }
  return sum;
}

inline std::vector<int> base3(std::uint64_t j, unsigned n) {
  std::vector<int> d(n, 0);
  for (unsigned i = n; i-- > 0;) {
    d[i] = static_cast<int>(j % 3);
    j /= 3;
  }
  return d;
}

// d^k/da^k F_a(j / 3^n), exact. j = 3^n is the point 1.
inline Q m_exact(int k, const Q& a, unsigned n, std::uint64_t j) {
  std::uint64_t p3 = 1;
  for (unsigned i = 0; i < n; ++i) p3 *= 3;
  if (j == p3) return k == 0 ? Q(1) : Q(0);
  return f_polynomial(base3(j, n)).derivative(k)(a);
}

// F_a(x) for x = 0.pre (period)^inf in wide precision by the closed form
// S_pre + W_pre * S_per / (1 - W_per).
template <class T>
T f_periodic(const T& a, const std::vector<int>& pre, const std::vector<int>& per) {
  const T q[3] = {T(0), a, T(1) - a};
  auto walk = [&](const std::vector<int>& ds, T& s, T& w) {
    s = T(0);
    w = T(1);
    for (int d : ds) {
      s += w * q[d];
      w *= d == 1 ? T(1) - 2 * a : a;
    }
  };
  T s0, w0, s1, w1;
  walk(pre, s0, w0);
  if (per.empty()) return s0;
  walk(per, s1, w1);
  return s0 + w0 * s1 / (T(1) - w1);
}

inline double binomial(int n, int k) {
  double c = 1.0;
  for (int t = 1; t <= k; ++t) c = c * (n - k + t) / t;
  return c;
}

// k-th central difference quotient with step h.
template <class F>
Wide central_difference(F&& f, const Wide& a, int k, const Wide& h) {
  Wide s = 0;
  for (int i = 0; i <= k; ++i) {
    const Wide off = (Wide(k) / 2 - i) * h;
    const Wide term = Wide(binomial(k, i)) * f(a + off);
    s += (i % 2 == 0) ? term : Wide(-term);
  }
  return s / pow(h, k);
}

// Ridders-style Richardson extrapolation of central differences (step ratio 2).
// Returns the estimate and its error estimate.
template <class F>
std::pair<double, double> richardson(F&& f, double a, int k, double h0, int levels = 8) {
  std::vector<std::vector<Wide>> t(static_cast<std::size_t>(levels));
  Wide h = h0;
  double best = 0.0;
  double err = INFINITY;
  for (int i = 0; i < levels; ++i, h /= 2) {
    auto& row = t[static_cast<std::size_t>(i)];
    row.push_back(central_difference(f, Wide(a), k, h));
    Wide fac = 4;
    for (int j = 1; j <= i; ++j, fac *= 4) {
      const Wide& prev = t[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)];
      row.push_back((fac * row[static_cast<std::size_t>(j - 1)] - prev) / (fac - 1));
      const double e = std::max(std::fabs(static_cast<double>(row[static_cast<std::size_t>(j)] - row[static_cast<std::size_t>(j - 1)])),
                                std::fabs(static_cast<double>(row[static_cast<std::size_t>(j)] - prev)));
      if (e <= err) {
        err = e;
        best = static_cast<double>(row[static_cast<std::size_t>(j)]);
      }
    }
  }
  return {best, err};
}

// Probabilists' Hermite polynomial He_k by the three-term recurrence, ascending coefficients.
inline std::vector<Z> hermite_he(int k) {
  std::vector<Z> prev{1};
  if (k == 0) return prev;
  std::vector<Z> cur{0, 1};
  for (int n = 1; n < k; ++n) {
    std::vector<Z> next(cur.size() + 1, 0);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= n * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Deterministic generator shared by the property tests.
// Neumaier summation in a fixed order.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    comp_ += std::fabs(sum_) >= std::fabs(x) ? (sum_ - t) + x : (x - t) + sum_;
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(0x6f6b616d6f746fULL);
  return g;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }
inline std::int64_t integer(std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

}  // namespace oracle
