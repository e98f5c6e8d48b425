/* Copyright 2026 The dwz Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <optional>
#include <ostream>
#include <sstream>

#include "dwz/dwork.hpp"
#include "dwz/errors.hpp"
#include "dwz/ffield.hpp"
#include "dwz/oracle.hpp"
#include "dwz/splitting.hpp"
#include "dwz/zeta.hpp"

namespace dwz::cli {

namespace {

using json = nlohmann::ordered_json;
using Clock = std::chrono::steady_clock;

struct Options {
  std::uint32_t p = 0;
  std::uint32_t a = 1;
  std::vector<std::uint32_t> modulus;
  std::uint32_t n = 0;
  std::vector<std::string> polys;
  std::uint32_t k = 1;
  std::vector<std::uint64_t> degree_bounds;
  std::optional<std::uint32_t> precision;
  std::uint64_t size_cap = 30000;
  std::uint64_t enum_cap = kDefaultEnumCap;
  std::string format = "json";
  std::string source = "dwork";
  bool stable = false;
  bool torus = false;
};

void add_common(CLI::App* sub, Options& o, bool many_polys) {
  sub->add_option("--p", o.p, "characteristic")->required();
  sub->add_option("--a", o.a, "extension degree of F_q over F_p")->check(CLI::PositiveNumber);
  sub->add_option("--modulus", o.modulus, "coefficients c0,...,ca of h, low to high")->delimiter(',');
  sub->add_option("--n", o.n, "number of variables")->required()->check(CLI::PositiveNumber);
  auto* poly = sub->add_option("--poly", o.polys, "polynomial, e.g. \"x1^2*x2 + 2*x1 + 1\"")->required();
  if (!many_polys) poly->expected(1);
  sub->add_option("--k", o.k, "count over F_{q^k}")->check(CLI::PositiveNumber);
  sub->add_option("--degree-bounds", o.degree_bounds, "D1,D2 for zeta recovery")->delimiter(',')->expected(2);
  sub->add_option("--precision", o.precision, "p-adic precision N (below (n+1)ak only the bracket is reported)");
  sub->add_option("--size-cap", o.size_cap, "largest matrix dimension W");
  sub->add_option("--enum-cap", o.enum_cap, "largest number of brute-force evaluations");
  sub->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--source", o.source, "point counts from dwork or oracle")->check(CLI::IsMember({"dwork", "oracle"}));
  sub->add_flag("--stable-output", o.stable, "omit timings");
}

json big(const mpz_class& x) {
  if (x.fits_slong_p()) return x.get_si();
  return x.get_str();
}

json big_list(const std::vector<mpz_class>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(big(x));
  return out;
}

class Runner {
 public:
  Runner(const Options& o, std::string command) : o_(o), command_(std::move(command)), start_(Clock::now()) {}

  json execute() {
    field_ = FieldSpec::make(o_.p, o_.a,
                             o_.modulus.empty() ? std::nullopt : std::optional<std::vector<std::uint32_t>>(o_.modulus));
    for (const auto& text : o_.polys) polys_.push_back(parse_poly(text, o_.n, field_));
    copts_.method = o_.source == "oracle" || command_ == "brute" ? CountMethod::kOracle : CountMethod::kDwork;
    copts_.toric.size_cap = o_.size_cap;
    copts_.toric.precision = o_.precision;
    copts_.enum_cap = o_.enum_cap;
    copts_.log = &log_;

    json report;
    report["command"] = command_;
    report["p"] = field_.p();
    report["a"] = field_.a();
    report["modulus"] = field_.modulus();
    report["n"] = o_.n;
    report["d"] = degree();
    report["polys"] = o_.polys;
    report["source"] = copts_.method == CountMethod::kOracle ? "oracle" : "dwork";

    json result;
    if (command_ == "count" || command_ == "variety" || (command_ == "brute" && o_.degree_bounds.empty())) {
      result = run_count(report);
    } else {
      result = run_zeta(report);
    }
    echo_dwork(report);
    for (auto& [key, value] : result.items()) report[key] = value;
    if (!o_.stable) {
      phases_["total"] = seconds_since(start_);
      report["timings"] = phases_;
    }
    report["warnings"] = warnings_;
    return report;
  }

 private:
  static double seconds_since(Clock::time_point t) {
    return std::chrono::duration<double>(Clock::now() - t).count();
  }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& f : polys_) d += f.degree();
    return polys_.size() == 1 ? polys_[0].degree() : d;
  }

  json run_count(json& report) {
    report["k"] = o_.k;
    report["torus"] = o_.torus;
    if (o_.polys.size() > 1 && command_ != "variety") {
      throw Error(ErrorKind::kInvalidArgument, "several --poly values need the variety command");
    }
    json result;
    if (command_ == "variety") {
      if (o_.torus) throw Error(ErrorKind::kInvalidArgument, "--torus does not apply to variety");
      result["count"] = variety_count(polys_, o_.k, field_, copts_);
    } else if (o_.torus) {
      if (copts_.method == CountMethod::kOracle) {
        result["count"] = brute_toric(polys_[0], o_.k, field_, o_.enum_cap);
      } else {
        const ToricResult r = toric_count(polys_[0], o_.k, field_, copts_.toric);
        log_.push_back(r);
        result["exact"] = r.exact;
        if (r.count) {
          result["count"] = *r.count;
        } else {
          result["bracket"] = r.bracket;
          warnings_.push_back("precision below (n+1)ak: only the bracket mod p^N is reported");
        }
      }
    } else {
      if (copts_.method == CountMethod::kOracle) {
        result["count"] = brute_affine(polys_[0], o_.k, field_, o_.enum_cap);
      } else {
        result["count"] = affine_count(polys_[0], o_.k, field_, copts_);
      }
    }
    return result;
  }

  json run_zeta(json& report) {
    if (o_.torus) throw Error(ErrorKind::kInvalidArgument, "--torus does not apply to zeta recovery");
    if (o_.precision) throw Error(ErrorKind::kInvalidArgument, "--precision does not apply to zeta recovery");
    std::uint64_t D1, D2;
    if (o_.degree_bounds.size() == 2) {
      D1 = o_.degree_bounds[0];
      D2 = o_.degree_bounds[1];
    } else {
      std::tie(D1, D2) = default_bounds(o_.n, std::max<std::uint32_t>(degree(), 1));
      warnings_.push_back("using the a priori degree bounds; pass --degree-bounds for realistic runs");
    }
    report["degree_bounds"] = {D1, D2};
    const std::uint64_t D = D1 + D2;
    preflight(D);

    auto t0 = Clock::now();
    const CountSeries counts = count_series(polys_, static_cast<std::uint32_t>(D), field_, copts_);
    phases_["counts"] = seconds_since(t0);
    t0 = Clock::now();
    const ZetaFn z = recover_zeta(counts, D1, D2);
    phases_["recovery"] = seconds_since(t0);

    json result;
    result["counts"] = counts.counts;
    result["numerator"] = big_list(z.num);
    result["denominator"] = big_list(z.den);
    if (command_ == "jacobian") {
      const JacobianResult j = jacobian_order(z, field_.q());
      result["P"] = big_list(j.P);
      result["order"] = big(j.order);
      if (!weil_shape(j.P, field_.q())) warnings_.push_back("P does not have the Weil shape");
    }
    return result;
  }

  // Refuse hopeless runs before counting anything.
  void preflight(std::uint64_t D) {
    if (D > UINT32_MAX) throw Error(ErrorKind::kSizeCapExceeded, "degree bounds need too many counts");
    const std::uint32_t d = degree();
    if (copts_.method == CountMethod::kOracle) {
      const double log_points = static_cast<double>(o_.n) * static_cast<double>(D) * std::log(field_.q());
      if (log_points > std::log(static_cast<double>(o_.enum_cap))) {
        throw Error(ErrorKind::kCapExceeded, "counts through k = " + std::to_string(D) + " need q^(nk) = " +
                                                 std::to_string(field_.q()) + "^" + std::to_string(o_.n * D) +
                                                 " evaluations, above cap " + std::to_string(o_.enum_cap));
      }
    } else if (d > 0) {
      const std::uint64_t N = static_cast<std::uint64_t>(o_.n + 1) * field_.a() * D;
      if (N > UINT32_MAX / (field_.p() * field_.p())) {
        throw Error(ErrorKind::kSizeCapExceeded, "precision for k = " + std::to_string(D) + " is too large");
      }
      const std::uint32_t t = matrix_weight_bound(field_.p(), static_cast<std::uint32_t>(N));
      const std::uint64_t W = count_points(t, ConeCtx::make(o_.n, d));
      if (W > o_.size_cap) {
        throw Error(ErrorKind::kSizeCapExceeded, "counts through k = " + std::to_string(D) + " need W = " +
                                                     std::to_string(W) + ", above size cap " +
                                                     std::to_string(o_.size_cap));
      }
    }
  }

  void echo_dwork(json& report) {
    if (log_.empty()) return;
    // the largest run determines the echoed sizes
    const ToricResult* big_run = &log_.front();
    PhaseTimes sum;
    for (const auto& r : log_) {
      if (r.W > big_run->W) big_run = &r;
      sum.theta += r.times.theta;
      sum.F += r.times.F;
      sum.matrix += r.times.matrix;
      sum.power += r.times.power;
    }
    report["N"] = big_run->N;
    report["t"] = big_run->t;
    report["t_tilde"] = big_run->t_tilde;
    report["W"] = big_run->W;
    report["W_tilde"] = big_run->W_tilde;
    report["toric_runs"] = log_.size();
    phases_["theta"] = sum.theta;
    phases_["F"] = sum.F;
    phases_["matrix"] = sum.matrix;
    phases_["power"] = sum.power;
  }

  const Options& o_;
  std::string command_;
  Clock::time_point start_;
  FieldSpec field_ = FieldSpec::prime_field(2);
  std::vector<Poly> polys_;
  CountOptions copts_;
  std::vector<ToricResult> log_;
  json phases_ = json::object();
  std::vector<std::string> warnings_;
};

void print_text(const json& report, std::ostream& out) {
  for (const auto& [key, value] : report.items()) {
    if (value.is_object()) {
      for (const auto& [sub, v] : value.items()) out << key << "." << sub << ": " << v.dump() << "\n";
    } else if (value.is_array()) {
      out << key << ":";
      for (const auto& v : value) out << " " << (v.is_string() ? v.get<std::string>() : v.dump());
      out << "\n";
    } else {
      out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
  }
}

int exit_code(ErrorCategory c) {
  switch (c) {
    case ErrorCategory::kValidation: return 2;
    case ErrorCategory::kCap: return 3;
    case ErrorCategory::kInternal: return 4;
  }
  return 4;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point counts and zeta functions over finite fields via Dwork's trace formula", "dwz"};
  app.require_subcommand(1);
  Options o;
  auto* count = app.add_subcommand("count", "zeros of f over F_{q^k} (or its torus with --torus)");
  add_common(count, o, false);
  count->add_flag("--torus", o.torus, "count on (F_{q^k}^*)^n");
  auto* zeta = app.add_subcommand("zeta", "zeta function of f = 0 recovered from counts");
  add_common(zeta, o, false);
  auto* variety = app.add_subcommand("variety", "common zeros of several polynomials (repeat --poly)");
  add_common(variety, o, true);
  auto* jac = app.add_subcommand("jacobian", "Jacobian order P(1) of an affine curve");
  add_common(jac, o, false);
  auto* brute = app.add_subcommand("brute", "exhaustive oracle: count, or zeta with --degree-bounds");
  add_common(brute, o, false);
  brute->add_flag("--torus", o.torus, "count on (F_{q^k}^*)^n");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    Runner runner(o, command);
    const json report = runner.execute();
    if (o.format == "text") {
      print_text(report, out);
    } else {
      out << report.dump() << "\n";
    }
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 4;
  }
}

}  // namespace dwz::cli
