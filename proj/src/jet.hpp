// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

// Truncated Taylor expansions in the parameter a. Every factor in the
// series for F_a is affine in a, so only products with linear jets occur.

#include <array>
#include <cstddef>

#include "okamoto/evaluator.hpp"

namespace okamoto::detail {

template <class T>
struct Jet {
  std::array<T, kMaxOrder + 1> c{};
  int order = 0;

  explicit Jet(int k, T c0 = T(0)) : order(k) { c[0] = c0; }

  /// this *= (u + v eps)
  void mul_linear(T u, T v) {
    for (int i = order; i > 0; --i) c[i] = u * c[i] + v * c[i - 1];
    c[0] = u * c[0];
  }
  /// this += w * (u + v eps)
  void add_linear_product(const Jet& w, T u, T v) {
    c[0] += u * w.c[0];
    for (int i = 1; i <= order; ++i) c[i] += u * w.c[i] + v * w.c[i - 1];
  }
  /// k-th derivative: k! times the top coefficient.
  T derivative() const {
    T f = c[order];
    for (int i = 2; i <= order; ++i) f *= T(i);
    return f;
  }
};

/// Digit weight alpha(d) = a for d in {0,2}, 1-2a for d = 1, as (value, slope).
template <class T>
inline std::array<T, 2> alpha(int d, T a) {
  return d == 1 ? std::array<T, 2>{T(1) - T(2) * a, T(-2)} : std::array<T, 2>{a, T(1)};
}

/// Digit offset q(d): q(0) = 0, q(1) = a, q(2) = 1 - a, as (value, slope).
template <class T>
inline std::array<T, 2> qdigit(int d, T a) {
  switch (d) {
    case 1: return {a, T(1)};
    case 2: return {T(1) - a, T(-1)};
    default: return {T(0), T(0)};
  }
}

}  // namespace okamoto::detail
