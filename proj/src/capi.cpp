// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
#include "okamoto/okamoto.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <new>
#include <string>
#include <vector>

#include "okamoto/classifier.hpp"
#include "okamoto/dimension.hpp"
#include "okamoto/error.hpp"
#include "okamoto/evaluator.hpp"
#include "okamoto/serialize.hpp"
#include "okamoto/ternary.hpp"

struct okm_source {
  okamoto::DigitSource src;
};

struct okm_text {
  std::string data;
};

namespace {

thread_local std::string g_last_error;

okm_status to_status(okamoto::ErrorCode c) {
  using okamoto::ErrorCode;
  switch (c) {
    case ErrorCode::Domain: return OKM_E_DOMAIN;
    case ErrorCode::Parse: return OKM_E_PARSE;
    case ErrorCode::Tolerance: return OKM_E_TOLERANCE;
    case ErrorCode::Budget: return OKM_E_BUDGET;
    case ErrorCode::Io: return OKM_E_IO;
    case ErrorCode::Internal: return OKM_E_INTERNAL;
  }
  return OKM_E_INTERNAL;
}

// Runs body and converts exceptions to status codes; nothing escapes the C boundary.
template <class F>
okm_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return OKM_OK;
  } catch (const okamoto::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return OKM_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return OKM_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return OKM_E_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  okamoto::require(p != nullptr, okamoto::ErrorCode::Domain, std::string(what) + " must not be null");
}

void emit(okm_text** out, std::string s) {
  need(out, "output pointer");
  *out = new okm_text{std::move(s)};
}

void copy_result(const okamoto::EvalResult& r, okm_eval_result* out) {
  out->value = r.value;
  out->err_bound = r.err_bound;
  out->terms = r.terms;
  out->exact = r.exact ? 1 : 0;
}

}  // namespace

extern "C" {

const char* okm_version(void) { return "0.1.0"; }

const char* okm_status_name(okm_status status) {
  switch (status) {
    case OKM_OK: return "ok";
    case OKM_E_DOMAIN: return "domain";
    case OKM_E_PARSE: return "parse";
    case OKM_E_TOLERANCE: return "tolerance";
    case OKM_E_BUDGET: return "budget";
    case OKM_E_IO: return "io";
    case OKM_E_INTERNAL: return "internal";
  }
  return "internal";
}

const char* okm_last_error(void) { return g_last_error.c_str(); }

const char* okm_text_data(const okm_text* text) { return text ? text->data.c_str() : ""; }
size_t okm_text_size(const okm_text* text) { return text ? text->data.size() : 0; }
void okm_text_free(okm_text* text) { delete text; }

okm_status okm_text_write(const okm_text* text, const char* path) {
  return guarded([&] {
    need(text, "text");
    need(path, "path");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    okamoto::require(f.good(), okamoto::ErrorCode::Io, std::string("cannot open for writing: ") + path);
    f.write(text->data.data(), static_cast<std::streamsize>(text->data.size()));
    f.close();
    okamoto::require(!f.fail(), okamoto::ErrorCode::Io, std::string("write failed: ") + path);
  });
}

okm_status okm_source_parse(const char* spec, okm_source** out) {
  return guarded([&] {
    need(spec, "spec");
    need(out, "output pointer");
    *out = new okm_source{okamoto::DigitSource::parse(spec)};
  });
}

okm_status okm_source_from_rational(int64_t p, int64_t q, okm_source** out) {
  return guarded([&] {
    need(out, "output pointer");
    *out = new okm_source{okamoto::DigitSource::from_rational(p, q)};
  });
}

void okm_source_free(okm_source* source) { delete source; }

okm_status okm_source_format(const okm_source* source, okm_text** out) {
  return guarded([&] {
    need(source, "source");
    emit(out, source->src.to_string());
  });
}

okm_status okm_source_digits(const okm_source* source, size_t n, uint8_t* out) {
  return guarded([&] {
    need(source, "source");
    if (n == 0) return;
    need(out, "digit buffer");
    const auto ds = source->src.prefix(n);
    std::copy(ds.begin(), ds.end(), out);
  });
}

okm_status okm_eval(int k, double a, const okm_source* x, double tol, okm_eval_result* out) {
  return guarded([&] {
    need(x, "source");
    need(out, "result");
    copy_result(okamoto::partial_M(k, a, x->src, tol), out);
  });
}

okm_status okm_eval_fe(int k, double a, const okm_source* x, size_t depth, okm_eval_result* out) {
  return guarded([&] {
    need(x, "source");
    need(out, "result");
    copy_result(okamoto::eval_via_FE(k, a, x->src, depth), out);
  });
}

okm_status okm_exact_at_rational(int k, double a, unsigned n, uint64_t j, double* out) {
  return guarded([&] {
    need(out, "result");
    *out = okamoto::exact_at_rational(k, a, n, j);
  });
}

okm_status okm_eval_json(int k, double a, const okm_source* x, double tol, okm_text** out) {
  return guarded([&] {
    need(x, "source");
    emit(out, okamoto::eval_json(k, a, x->src, okamoto::partial_M(k, a, x->src, tol)));
  });
}

okm_status okm_graph_csv(int k, double a, unsigned n, okm_text** out) {
  return guarded([&] { emit(out, okamoto::graph_csv(k, a, n)); });
}

okm_status okm_classify(int k, double a, const okm_source* x, size_t horizon, okm_verdict* verdict, int* proved) {
  return guarded([&] {
    need(x, "source");
    need(verdict, "verdict");
    const auto pc = okamoto::classify(k, a, x->src, horizon ? horizon : okamoto::kDefaultHorizon);
    *verdict = static_cast<okm_verdict>(pc.verdict);
    if (proved) *proved = pc.exact ? 1 : 0;
  });
}

okm_status okm_classify_json(int k, double a, const okm_source* x, size_t horizon, okm_text** out) {
  return guarded([&] {
    need(x, "source");
    const auto pc = okamoto::classify(k, a, x->src, horizon ? horizon : okamoto::kDefaultHorizon);
    emit(out, okamoto::classify_json(k, a, x->src, pc));
  });
}

okm_status okm_qpoly_json(int k, double a, okm_text** out) {
  return guarded([&] {
    emit(out, okamoto::qpoly_json(k, std::isnan(a) ? std::nullopt : std::optional<double>(a)));
  });
}

okm_status okm_constants_json(okm_text** out) {
  return guarded([&] { emit(out, okamoto::constants_json()); });
}

okm_status okm_boxdim(int k, double a, unsigned n_min, unsigned n_max, unsigned m, okm_format format,
                      okm_text** out) {
  return guarded([&] {
    const auto rep = okamoto::box_dimension(k, a, n_min, n_max, m);
    emit(out, format == OKM_FORMAT_CSV ? okamoto::boxdim_csv(rep) : okamoto::boxdim_json(rep));
  });
}

okm_status okm_markov_json(double a, double p, size_t cycles, uint64_t seed, okm_text** out) {
  return guarded([&] {
    const auto mm = okamoto::markov_model(a, p);
    std::optional<okamoto::CycleStats> cs;
    if (cycles > 0) cs = okamoto::markov_cycle_stats(a, p, cycles, seed);
    emit(out, okamoto::markov_json(mm, cs));
  });
}

okm_status okm_lil_json(double a, double p, size_t steps, size_t trials, uint64_t seed, okm_text** out) {
  return guarded([&] { emit(out, okamoto::lil_json(okamoto::lil_simulate(a, p, steps, trials, seed))); });
}

okm_status okm_curve_csv(double a_lo, double a_hi, size_t points, okm_text** out) {
  return guarded([&] {
    okamoto::require(points >= 2, okamoto::ErrorCode::Domain, "curve needs at least 2 points");
    okamoto::require(a_lo < a_hi, okamoto::ErrorCode::Domain, "curve needs a_lo < a_hi");
    std::vector<double> grid(points);
    for (size_t i = 0; i < points; ++i)
      grid[i] = a_lo + (a_hi - a_lo) * static_cast<double>(i) / static_cast<double>(points - 1);
    grid.back() = a_hi;
    const auto pts = okamoto::dim_lower_curve(grid);
    emit(out, okamoto::curve_csv(pts));
  });
}

}  // extern "C"
