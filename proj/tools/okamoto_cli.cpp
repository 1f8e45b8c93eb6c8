// Copyright 2026 The okamoto authors.
// SPDX-License-Identifier: Apache-2.0
//
// okamoto: command-line front end over the C API.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include "okamoto/okamoto.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;

struct TextDeleter {
  void operator()(okm_text* t) const { okm_text_free(t); }
};
struct SourceDeleter {
  void operator()(okm_source* s) const { okm_source_free(s); }
};
using Text = std::unique_ptr<okm_text, TextDeleter>;
using Source = std::unique_ptr<okm_source, SourceDeleter>;

// Carries a library status out of a subcommand handler.
struct StatusError {
  okm_status status;
  std::string message;
};

void check(okm_status s) {
  if (s != OKM_OK) throw StatusError{s, okm_last_error()};
}

void validation(const std::string& msg) { throw StatusError{OKM_E_DOMAIN, msg}; }

// Accepts decimals and exact fractions such as "1/3".
double parse_real(const std::string& name, const std::string& text) {
  try {
    const auto slash = text.find('/');
    std::size_t used = 0;
    if (slash == std::string::npos) {
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument(text);
      return v;
    }
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    const double p = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument(text);
    const double q = std::stod(den, &used);
    if (used != den.size() || q == 0.0) throw std::invalid_argument(text);
    return p / q;
  } catch (const std::logic_error&) {
    throw StatusError{OKM_E_PARSE, "--" + name + " expects a number or p/q, got '" + text + "'"};
  }
}

Source parse_point(const std::string& spec) {
  okm_source* raw = nullptr;
  check(okm_source_parse(spec.c_str(), &raw));
  return Source(raw);
}

void deliver(Text text, const std::string& out) {
  if (out.empty()) {
    std::fwrite(okm_text_data(text.get()), 1, okm_text_size(text.get()), stdout);
    std::fflush(stdout);
  } else {
    check(okm_text_write(text.get(), out.c_str()));
  }
}

okm_format parse_format(const std::string& f) { return f == "csv" ? OKM_FORMAT_CSV : OKM_FORMAT_JSON; }

struct Options {
  int k = 0;
  std::string a;
  std::string p;
  std::string x;
  unsigned n = 8;
  unsigned nmin = 4;
  unsigned nmax = 9;
  unsigned m = 3;
  double tol = 1e-12;
  std::uint64_t seed = 1;
  std::size_t trials = 20;
  std::size_t steps = 1000000;
  std::size_t cycles = 0;
  std::size_t horizon = 0;
  std::size_t points = 100;
  std::string format = "json";
  std::string out;
};

double require_a(const Options& o) {
  if (o.a.empty()) validation("--a is required");
  return parse_real("a", o.a);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Okamoto functions, parameter derivatives and point classification", "okamoto"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", okm_version());
  Options o;

  auto add_k = [&](CLI::App* c) { c->add_option("--k", o.k, "derivative order")->check(CLI::Range(0, 60)); };
  auto add_a = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--a", o.a, "parameter a (decimal or p/q)");
    if (required) opt->required();
  };
  auto add_format = [&](CLI::App* c) {
    c->add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto add_out = [&](CLI::App* c) { c->add_option("--out", o.out, "write output to this file"); };

  auto* eval = app.add_subcommand("eval", "evaluate M_{k,a}(x)");
  add_k(eval);
  add_a(eval, true);
  eval->add_option("--x", o.x, "point spec: F:..., P:pre|period, G:family:..., R:p/q")->required();
  eval->add_option("--tol", o.tol, "absolute tolerance")->check(CLI::PositiveNumber);
  add_out(eval);

  auto* graph = app.add_subcommand("graph", "sample M_{k,a} at j/3^n as CSV");
  add_k(graph);
  add_a(graph, true);
  graph->add_option("--n", o.n, "depth, 1..12");
  add_out(graph);

  auto* classify = app.add_subcommand("classify", "classify the derivative of M_{k,a} at x");
  add_k(classify);
  add_a(classify, true);
  classify->add_option("--x", o.x, "point spec")->required();
  classify->add_option("--n", o.horizon, "digit horizon for generated points (0 = default)");
  add_out(classify);

  auto* qpoly = app.add_subcommand("qpoly", "coefficients and roots of q_k");
  add_k(qpoly);
  add_a(qpoly, false);
  add_out(qpoly);

  auto* consts = app.add_subcommand("consts", "critical constants a0, a_hat, 1/golden ratio");
  add_out(consts);

  auto* boxdim = app.add_subcommand("boxdim", "box-counting dimension fit of the graph");
  add_k(boxdim);
  add_a(boxdim, true);
  boxdim->add_option("--nmin", o.nmin, "smallest scale");
  boxdim->add_option("--nmax", o.nmax, "largest scale");
  boxdim->add_option("--m", o.m, "subgrid depth per column");
  add_format(boxdim);
  add_out(boxdim);

  auto* markov = app.add_subcommand("markov", "Markov digit model summary");
  add_a(markov, true);
  markov->add_option("--p", o.p, "probability of staying on digit 1")->required();
  markov->add_option("--cycles", o.cycles, "simulate this many cycles (0 = none)");
  markov->add_option("--seed", o.seed, "random seed");
  add_out(markov);

  auto* lil = app.add_subcommand("lil", "iterated-logarithm statistic of the Markov digit chain");
  add_a(lil, true);
  lil->add_option("--p", o.p, "probability of staying on digit 1")->required();
  lil->add_option("--steps", o.steps, "digits per trial");
  lil->add_option("--trials", o.trials, "number of trials");
  lil->add_option("--seed", o.seed, "random seed");
  add_out(lil);

  auto* curve = app.add_subcommand("curve", "lower and upper dimension curves on [1/8, 3/8]");
  curve->add_option("--n", o.points, "grid points");
  add_out(curve);

  if (argc > 1 && argv[1][0] != '-') {
    const auto subs = app.get_subcommands([](CLI::App*) { return true; });
    const bool known = std::any_of(subs.begin(), subs.end(), [&](CLI::App* s) { return s->get_name() == argv[1]; });
    if (!known) {
      std::cerr << "error[usage]: unknown subcommand '" << argv[1] << "'\n\n" << app.help();
      return kExitValidation;
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error[usage]: " << e.what() << "\n\n" << app.help();
    return kExitValidation;
  }

  try {
    Text text;
    okm_text* raw = nullptr;
    if (app.got_subcommand(eval)) {
      const auto x = parse_point(o.x);
      check(okm_eval_json(o.k, require_a(o), x.get(), o.tol, &raw));
    } else if (app.got_subcommand(graph)) {
      check(okm_graph_csv(o.k, require_a(o), o.n, &raw));
    } else if (app.got_subcommand(classify)) {
      const auto x = parse_point(o.x);
      check(okm_classify_json(o.k, require_a(o), x.get(), o.horizon, &raw));
    } else if (app.got_subcommand(qpoly)) {
      const double a = o.a.empty() ? std::numeric_limits<double>::quiet_NaN() : parse_real("a", o.a);
      check(okm_qpoly_json(o.k, a, &raw));
    } else if (app.got_subcommand(consts)) {
      check(okm_constants_json(&raw));
    } else if (app.got_subcommand(boxdim)) {
      check(okm_boxdim(o.k, require_a(o), o.nmin, o.nmax, o.m, parse_format(o.format), &raw));
    } else if (app.got_subcommand(markov)) {
      check(okm_markov_json(require_a(o), parse_real("p", o.p), o.cycles, o.seed, &raw));
    } else if (app.got_subcommand(lil)) {
      check(okm_lil_json(require_a(o), parse_real("p", o.p), o.steps, o.trials, o.seed, &raw));
    } else if (app.got_subcommand(curve)) {
      check(okm_curve_csv(0.125, 0.375, o.points, &raw));
    }
    text.reset(raw);
    deliver(std::move(text), o.out);
    return kExitOk;
  } catch (const StatusError& e) {
    std::cerr << "error[" << okm_status_name(e.status) << "]: " << e.message << '\n';
    const bool internal = e.status == OKM_E_INTERNAL || e.status == OKM_E_IO;
    return internal ? kExitInternal : kExitValidation;
  }
}
