// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include "okamoto/dimension.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "okamoto/error.hpp"
#include "okamoto/evaluator.hpp"
#include "okamoto/increments.hpp"
#include "okamoto/spectral.hpp"
#include "okamoto/ternary.hpp"

namespace okamoto {

namespace {

const double kLn3 = std::log(3.0);

double xlogx(double v) { return v > 0.0 ? v * std::log(v) : 0.0; }

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

// Runs body(i) for i in [0, count) on a small pool; each i owns its output slot.
template <class F>
void parallel_for(std::size_t count, F body) {
  const std::size_t workers = std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, 16);
  if (workers == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < std::min(workers, count); ++w)
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < count; i += workers) body(i);
    });
}

// Mesh squares met by a column of height h (in mesh units); a height that is an
// integer up to rounding is not bumped to the next square.
std::uint64_t squares(double h) {
  return static_cast<std::uint64_t>(std::max(1.0, std::ceil(h - 1e-9 * std::max(1.0, h))));
}

struct Columns {
  std::uint64_t count = 0;
  std::uint64_t upper = 0;
};

// Column extrema at scale n from grid values at depth D >= n + m.
Columns count_columns(const std::vector<double>& grid, unsigned D, unsigned n, unsigned m,
                      const std::vector<double>& osc_by_l) {
  const std::uint64_t stride = pow3(D - n - m);
  const std::uint64_t sub = pow3(m);
  const std::uint64_t cols = pow3(n);
  const double scale = static_cast<double>(cols);
  Columns c;
  for (std::uint64_t j = 0; j < cols; ++j) {
    double lo = grid[j * sub * stride];
    double hi = lo;
    double osc = 0.0;
    for (std::uint64_t i = 1; i <= sub; ++i) {
      const double v = grid[(j * sub + i) * stride];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (!osc_by_l.empty()) {
      for (std::uint64_t i = 0; i < sub; ++i) osc = std::max(osc, osc_by_l[ones_of(j * sub + i)]);
    }
    c.count += squares(scale * (hi - lo));
    c.upper += squares(scale * (hi - lo + 2.0 * osc));
  }
  return c;
}

std::vector<double> osc_table(int k, double a, unsigned depth) {
  std::vector<double> t(depth + 1, 0.0);
  for (unsigned l = 0; l <= depth; ++l) {
    t[l] = param_eq(a, 0.5) ? 2.0 * tail_bound(k, a, depth) : osc_bound(k, a, TernaryInterval::with_ones(depth, l));
  }
  return t;
}

}  // namespace

double box_dim_formula(double a) {
  require_parameter(a);
  return a >= 0.5 ? 1.0 + std::log(4.0 * a - 1.0) / kLn3 : 1.0;
}

std::uint64_t box_count(int k, double a, unsigned n, unsigned m) {
  require(n >= 1, ErrorCode::Domain, "box_count needs n >= 1");
  require(n + m <= 16, ErrorCode::Budget, "box_count budget: n + m must be <= 16");
  const auto grid = grid_values(k, a, n + m);
  return count_columns(grid, n + m, n, m, {}).count;
}

DimensionReport box_dimension(int k, double a, unsigned n_min, unsigned n_max, unsigned m) {
  require(n_min >= 1 && n_min < n_max, ErrorCode::Domain, "need 1 <= n_min < n_max");
  require(n_max + m <= 16, ErrorCode::Budget, "box_dimension budget: n_max + m must be <= 16");
  DimensionReport rep;
  rep.k = k;
  rep.a = a;
  rep.m = m;
  const unsigned D = n_max + m;
  const auto grid = grid_values(k, a, D);
  std::vector<double> xs, ys, yc;
  rep.prefactor_exponent = a >= 0.5 - kParamEps ? k : 0.5 * k;
  for (unsigned n = n_min; n <= n_max; ++n) {
    const Columns c = count_columns(grid, D, n, m, osc_table(k, a, n + m));
    BoxCountRow row;
    row.n = n;
    row.count = c.count;
    row.count_upper = c.upper;
    row.log3count = std::log(static_cast<double>(c.count)) / kLn3;
    rep.rows.push_back(row);
    xs.push_back(n);
    ys.push_back(row.log3count);
    yc.push_back(row.log3count - rep.prefactor_exponent * std::log(static_cast<double>(n)) / kLn3);
  }
  rep.slope = ls_slope(xs, ys);
  rep.slope_corrected = ls_slope(xs, yc);
  rep.formula = box_dim_formula(a);
  rep.residual = std::fabs(rep.slope_corrected - rep.formula);
  rep.residual_raw = std::fabs(rep.slope - rep.formula);
  return rep;
}

double markov_entropy(double a, double p) {
  const double r = (1.0 - 2.0 * a) * (1.0 - p) / (2.0 * a);
  return -2.0 * a * (1.0 - r) * std::log((1.0 - r) / 2.0) * (r < 1.0) - 2.0 * a * xlogx(r) -
         (1.0 - 2.0 * a) * (1.0 - p) * std::log((1.0 - p) / 2.0) * (p < 1.0) - (1.0 - 2.0 * a) * xlogx(p);
}

MarkovModel markov_model(double a, double p) {
  require(a > 0.0 && a <= 0.5, ErrorCode::Domain, "markov model needs a in (0, 1/2]");
  require(p >= 0.0 && p <= 1.0, ErrorCode::Domain, "markov model needs p in [0, 1]");
  MarkovModel mm;
  mm.a = a;
  mm.p = p;
  mm.r = (1.0 - 2.0 * a) * (1.0 - p) / (2.0 * a);
  require(mm.r >= 0.0 && mm.r <= 1.0 + kParamEps, ErrorCode::Domain,
          "r = (1-2a)(1-p)/(2a) = " + std::to_string(mm.r) + " violates r <= 1");
  mm.r = std::min(mm.r, 1.0);
  const double r = mm.r;
  mm.matrix = {{{(1 - r) / 2, r, (1 - r) / 2}, {(1 - p) / 2, p, (1 - p) / 2}, {(1 - r) / 2, r, (1 - r) / 2}}};
  mm.stationary = {a, 1.0 - 2.0 * a, a};
  mm.entropy = markov_entropy(a, p);
  if (a >= 0.125 - kParamEps && a <= 0.375 + kParamEps) {
    mm.p_crit = 1.0 - 8.0 * a / 3.0;
    mm.dim_lower = markov_entropy(a, *mm.p_crit) / kLn3;
  }
  const double num = 2.0 * a * (1.0 - 2.0 * a) * (4.0 * a - 1.0 + p);
  if (p < 1.0 && num >= 0.0) mm.lil_constant = std::sqrt(num / (1.0 - p));
  mm.c0 = std::sqrt(2.0 * a * (1.0 - 2.0 * a));
  return mm;
}

LilReport lil_simulate(double a, double p, std::size_t steps, std::size_t trials, std::uint64_t seed) {
  require(steps >= 10000, ErrorCode::Domain, "lil_simulate needs steps >= 10^4");
  require(trials >= 1, ErrorCode::Domain, "lil_simulate needs trials >= 1");
  const MarkovModel mm = markov_model(a, p);
  LilReport rep;
  rep.a = a;
  rep.p = p;
  rep.steps = steps;
  rep.trials = trials;
  rep.seed = seed;
  rep.constant = mm.lil_constant.value_or(std::nan(""));
  rep.c0 = mm.c0;
  rep.trial_max.assign(trials, 0.0);
  const double nu = 1.0 - 2.0 * a;
  parallel_for(trials, [&](std::size_t t) {
    const std::uint64_t trial_seed = static_cast<std::uint64_t>(uniform_at(seed, t) * 0x1.0p53);
    const DigitSource src = DigitSource::generated(MarkovRule{a, p}, trial_seed);
    const Digits ds = src.prefix(steps);
    double best = -std::numeric_limits<double>::infinity();
    std::size_t l = 0;
    for (std::size_t n = 1; n <= steps; ++n) {
      l += ds[n - 1] == 1;
      if (n < 1000) continue;
      const double nd = static_cast<double>(n);
      best = std::max(best, (static_cast<double>(l) - nu * nd) / std::sqrt(2.0 * nd * std::log(std::log(nd))));
    }
    rep.trial_max[t] = best;
  });
  rep.max = *std::max_element(rep.trial_max.begin(), rep.trial_max.end());
  rep.below_c0 = static_cast<std::size_t>(
      std::count_if(rep.trial_max.begin(), rep.trial_max.end(), [&](double v) { return v < rep.c0; }));
  return rep;
}

CycleStats markov_cycle_stats(double a, double p, std::size_t cycles, std::uint64_t seed) {
  require(cycles >= 100, ErrorCode::Domain, "markov_cycle_stats needs at least 100 cycles");
  const MarkovModel mm = markov_model(a, p);
  require(mm.r > 0.0 && p < 1.0, ErrorCode::Domain, "cycle statistics need 0 < r and p < 1");
  const DigitSource src = DigitSource::generated(MarkovRule{a, p}, seed);
  const double mean_u = 1.0 / ((1.0 - 2.0 * a) * (1.0 - p));
  std::size_t len = static_cast<std::size_t>(static_cast<double>(cycles + 10) * mean_u * 1.5) + 1000;

  std::vector<double> us, zs;
  Digits ds;
  for (;;) {
    ds = src.prefix(len);
    us.clear();
    zs.clear();
    // Skip the leading non-1 run and the first run of 1s; then pair (non-1 run, 1-run).
    std::size_t i = 0;
    while (i < ds.size() && ds[i] != 1) ++i;
    while (i < ds.size() && ds[i] == 1) ++i;
    while (us.size() < cycles) {
      const std::size_t s0 = i;
      while (i < ds.size() && ds[i] != 1) ++i;
      const std::size_t s1 = i;
      while (i < ds.size() && ds[i] == 1) ++i;
      if (i >= ds.size()) break;  // last run may be cut off
      const double t_odd = static_cast<double>(s1 - s0);
      const double t_even = static_cast<double>(i - s1);
      us.push_back(t_odd + t_even);
      zs.push_back(2.0 * a * t_even - (1.0 - 2.0 * a) * t_odd);
    }
    if (us.size() >= cycles) {
      ds.resize(i);
      break;
    }
    len *= 2;
  }

  CycleStats cs;
  cs.cycles = cycles;
  auto moments = [](const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    m /= static_cast<double>(v.size());
    double m2 = 0.0, m4 = 0.0;
    for (double x : v) {
      const double d = x - m;
      m2 += d * d;
      m4 += d * d * d * d;
    }
    const double n = static_cast<double>(v.size());
    return std::array<double, 3>{m, m2 / (n - 1.0), m4 / n};
  };
  const double n = static_cast<double>(cycles);
  const auto mu = moments(us);
  cs.mean_u = {mu[0], std::sqrt(mu[1] / n), mean_u};
  const auto mz = moments(zs);
  cs.mean_z = {mz[0], std::sqrt(mz[1] / n), 0.0};
  cs.var_z = {mz[1], std::sqrt(std::max(0.0, mz[2] - mz[1] * mz[1]) / n),
              2.0 * a * (4.0 * a - 1.0 + p) / ((1.0 - p) * (1.0 - p))};

  constexpr std::size_t kBatches = 100;
  const std::size_t blen = ds.size() / kBatches;
  for (int d = 0; d < 3; ++d) {
    std::vector<double> fr;
    for (std::size_t b = 0; b < kBatches; ++b) {
      const auto first = ds.begin() + static_cast<std::ptrdiff_t>(b * blen);
      fr.push_back(static_cast<double>(std::count(first, first + static_cast<std::ptrdiff_t>(blen), Digit(d))) /
                   static_cast<double>(blen));
    }
    const auto mf = moments(fr);
    cs.freq[static_cast<std::size_t>(d)] = {mf[0], std::sqrt(mf[1] / kBatches), mm.stationary[static_cast<std::size_t>(d)]};
  }
  for (std::size_t j = 0; j < 3; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < 3; ++i) s += mm.stationary[i] * mm.matrix[i][j];
    cs.stationarity_residual = std::max(cs.stationarity_residual, std::fabs(s - mm.stationary[j]));
  }
  return cs;
}

std::vector<CurvePoint> dim_lower_curve(std::span<const double> grid) {
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (double a : grid) {
    require(a >= 0.125 - kParamEps && a <= 0.375 + kParamEps, ErrorCode::Domain, "curve grid must lie in [1/8, 3/8]");
    const MarkovModel mm = markov_model(a, 1.0 - 8.0 * a / 3.0);
    out.push_back({a, mm.entropy / kLn3, entropy_h(1.0 - 2.0 * a)});
  }
  return out;
}

}  // namespace okamoto
