// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include "okamoto/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>

#include "okamoto/error.hpp"
#include "okamoto/hermite_q.hpp"

namespace okamoto {

namespace {

using nlohmann::ordered_json;

// Infinities become strings so the document stays valid JSON.
ordered_json num(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  return v;
}

ordered_json opt(const std::optional<double>& v) { return v ? num(*v) : ordered_json(nullptr); }

ordered_json estimate(const Estimate& e) {
  return {{"value", num(e.value)}, {"std_error", num(e.std_error)}, {"expected", num(e.expected)}, {"z", num(e.z())}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string eval_json(int k, double a, const DigitSource& x, const EvalResult& r) {
  ordered_json j{{"k", k},          {"a", num(a)},
                 {"x", x.to_string()}, {"value", num(r.value)},
                 {"err_bound", num(r.err_bound)}, {"terms", r.terms},
                 {"exact", r.exact}};
  return dump(j);
}

std::string graph_csv(int k, double a, unsigned n) {
  require(n >= 1 && n <= 12, ErrorCode::Domain, "graph depth must satisfy 1 <= n <= 12");
  const auto vals = grid_values(k, a, n);
  const double denom = static_cast<double>(pow3(n));
  std::string out = "x,value\n";
  out.reserve(vals.size() * 48);
  for (std::size_t j = 0; j < vals.size(); ++j) {
    out += format_double(static_cast<double>(j) / denom);
    out += ',';
    out += format_double(vals[j]);
    out += '\n';
  }
  return out;
}

std::string classify_json(int k, double a, const DigitSource& x, const PointClass& pc) {
  ordered_json stats{{"lambda_lo", num(pc.stats.lambda_lo)},
                     {"lambda_hi", num(pc.stats.lambda_hi)},
                     {"delta_lo", num(pc.stats.delta_lo)},
                     {"delta_hi", num(pc.stats.delta_hi)},
                     {"exact", pc.stats.exact}};
  if (pc.stats.exact) {
    stats["period_ones"] = pc.stats.period_ones;
    stats["period_length"] = pc.stats.period_length;
  }
  if (pc.ones) stats["ones"] = *pc.ones;
  if (pc.l_plus) stats["l_plus"] = num(*pc.l_plus);
  if (pc.l_minus) stats["l_minus"] = num(*pc.l_minus);
  ordered_json j{{"k", k},
                 {"a", num(a)},
                 {"x", x.to_string()},
                 {"verdict", verdict_name(pc.verdict)},
                 {"reason", pc.reason},
                 {"exactness", pc.exact ? "proved" : "consistent with"},
                 {"stats", stats}};
  return dump(j);
}

std::string qpoly_json(int k, std::optional<double> a) {
  const QPolynomial q = q_poly(k);
  ordered_json coeffs = ordered_json::array();
  for (const auto& c : q.coeffs) coeffs.push_back(c.convert_to<long long>());
  ordered_json roots = ordered_json::array();
  for (double r : q_roots(k)) roots.push_back(num(r));
  ordered_json j{{"k", k}, {"coefficients", coeffs}, {"roots", roots}};
  if (a) {
    const ThresholdSet ts = thresholds(k, *a);
    ordered_json scaled = ordered_json::array();
    for (double s : ts.scaled) scaled.push_back(num(s));
    j["a"] = num(*a);
    j["thresholds"] = scaled;
  }
  return dump(j);
}

std::string constants_json() {
  const SpecialConstants sc = special_constants();
  ordered_json j{{"a0", num(sc.a0)},
                 {"a_hat", num(sc.a_hat)},
                 {"inv_golden", num(sc.inv_golden)},
                 {"a_hat_terms", sc.a_hat_terms},
                 {"a_hat_tail", num(sc.a_hat_tail)}};
  return dump(j);
}

std::string boxdim_json(const DimensionReport& rep) {
  ordered_json rows = ordered_json::array();
  for (const auto& r : rep.rows)
    rows.push_back({{"n", r.n}, {"count", r.count}, {"log3count", num(r.log3count)}, {"count_upper", r.count_upper}});
  ordered_json j{{"k", rep.k},
                 {"a", num(rep.a)},
                 {"m", rep.m},
                 {"rows", rows},
                 {"slope", num(rep.slope)},
                 {"prefactor_exponent", num(rep.prefactor_exponent)},
                 {"slope_corrected", num(rep.slope_corrected)},
                 {"formula", num(rep.formula)},
                 {"residual", num(rep.residual)},
                 {"residual_raw", num(rep.residual_raw)}};
  return dump(j);
}

std::string boxdim_csv(const DimensionReport& rep) {
  std::string out = "n,count,log3count,count_upper\n";
  for (const auto& r : rep.rows) {
    out += std::to_string(r.n) + ',' + std::to_string(r.count) + ',' + format_double(r.log3count) + ',' +
           std::to_string(r.count_upper) + '\n';
  }
  return out;
}

std::string markov_json(const MarkovModel& mm, const std::optional<CycleStats>& cycles) {
  ordered_json matrix = ordered_json::array();
  for (const auto& row : mm.matrix) matrix.push_back({num(row[0]), num(row[1]), num(row[2])});
  ordered_json j{{"a", num(mm.a)},
                 {"p", num(mm.p)},
                 {"r", num(mm.r)},
                 {"matrix", matrix},
                 {"stationary", {num(mm.stationary[0]), num(mm.stationary[1]), num(mm.stationary[2])}},
                 {"entropy", num(mm.entropy)},
                 {"p_crit", opt(mm.p_crit)},
                 {"dim_lower", opt(mm.dim_lower)},
                 {"lil_constant", opt(mm.lil_constant)},
                 {"c0", num(mm.c0)}};
  if (cycles) {
    j["cycles"] = {{"count", cycles->cycles},
                   {"mean_u", estimate(cycles->mean_u)},
                   {"var_z", estimate(cycles->var_z)},
                   {"mean_z", estimate(cycles->mean_z)},
                   {"freq", {estimate(cycles->freq[0]), estimate(cycles->freq[1]), estimate(cycles->freq[2])}},
                   {"stationarity_residual", num(cycles->stationarity_residual)}};
  }
  return dump(j);
}

std::string lil_json(const LilReport& rep) {
  ordered_json maxima = ordered_json::array();
  for (double v : rep.trial_max) maxima.push_back(num(v));
  ordered_json j{{"a", num(rep.a)},     {"p", num(rep.p)},          {"steps", rep.steps},
                 {"trials", rep.trials}, {"seed", rep.seed},         {"constant", num(rep.constant)},
                 {"c0", num(rep.c0)},    {"trial_max", maxima},      {"max", num(rep.max)},
                 {"below_c0", rep.below_c0}};
  return dump(j);
}

std::string curve_csv(std::span<const CurvePoint> pts) {
  std::string out = "a,Htilde,hupper\n";
  for (const auto& p : pts) out += format_double(p.a) + ',' + format_double(p.htilde) + ',' + format_double(p.hupper) + '\n';
  return out;
}

}  // namespace okamoto
