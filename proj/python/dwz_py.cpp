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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "cli.hpp"
#include "dwz/cone.hpp"
#include "dwz/dwork.hpp"
#include "dwz/errors.hpp"
#include "dwz/ffield.hpp"
#include "dwz/oracle.hpp"
#include "dwz/zeta.hpp"

namespace py = pybind11;

namespace {

dwz::FieldSpec field_of(std::uint32_t p, std::uint32_t a, std::optional<std::vector<std::uint32_t>> modulus) {
  return dwz::FieldSpec::make(p, a, std::move(modulus));
}

std::vector<dwz::Poly> parse_all(const std::vector<std::string>& texts, std::uint32_t n, const dwz::FieldSpec& f) {
  std::vector<dwz::Poly> out;
  for (const auto& t : texts) out.push_back(dwz::parse_poly(t, n, f));
  return out;
}

py::int_ to_py(const mpz_class& x) { return py::int_(py::str(x.get_str())); }

py::list to_py(const std::vector<mpz_class>& xs) {
  py::list out;
  for (const auto& x : xs) out.append(to_py(x));
  return out;
}

std::vector<mpz_class> from_py(const std::vector<py::int_>& xs) {
  std::vector<mpz_class> out;
  for (const auto& x : xs) out.emplace_back(py::str(x).cast<std::string>());
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Point counting and zeta functions over finite fields via Dwork's trace formula";

  static py::exception<dwz::Error> error(m, "DwzError");
  py::register_exception_translator([](std::exception_ptr ptr) {
    try {
      if (ptr) std::rethrow_exception(ptr);
    } catch (const dwz::Error& e) {
      py::set_error(error, e.what());
    }
  });

  py::class_<dwz::FieldSpec>(m, "Field")
      .def(py::init(&field_of), py::arg("p"), py::arg("a") = 1, py::arg("modulus") = py::none())
      .def_property_readonly("p", &dwz::FieldSpec::p)
      .def_property_readonly("a", &dwz::FieldSpec::a)
      .def_property_readonly("q", &dwz::FieldSpec::q)
      .def_property_readonly("modulus", &dwz::FieldSpec::modulus)
      .def("__repr__", [](const dwz::FieldSpec& f) {
        std::ostringstream s;
        s << "Field(p=" << f.p() << ", a=" << f.a() << ")";
        return s.str();
      });

  m.def("normalize_poly", [](const std::string& text, std::uint32_t n, const dwz::FieldSpec& f) {
    return dwz::render_poly(dwz::parse_poly(text, n, f), f);
  }, py::arg("poly"), py::arg("n"), py::arg("field"), "canonical rendering of a polynomial");

  m.def("toric_count", [](const std::string& text, std::uint32_t n, std::uint32_t k, const dwz::FieldSpec& f,
                          std::optional<std::uint32_t> precision, std::uint64_t size_cap) {
    dwz::ToricOptions opts;
    opts.precision = precision;
    opts.size_cap = size_cap;
    const dwz::ToricResult r = dwz::toric_count(dwz::parse_poly(text, n, f), k, f, opts);
    py::dict out;
    out["count"] = r.count ? py::cast(*r.count) : py::none();
    out["exact"] = r.exact;
    out["bracket"] = r.bracket;
    out["N"] = r.N;
    out["t"] = r.t;
    out["t_tilde"] = r.t_tilde;
    out["W"] = r.W;
    out["W_tilde"] = r.W_tilde;
    return out;
  }, py::arg("poly"), py::arg("n"), py::arg("k"), py::arg("field"), py::arg("precision") = py::none(),
        py::arg("size_cap") = 30000, "zeros on the torus via the trace formula");

  m.def("affine_count", [](const std::string& text, std::uint32_t n, std::uint32_t k, const dwz::FieldSpec& f,
                           bool oracle) {
    dwz::CountOptions o;
    o.method = oracle ? dwz::CountMethod::kOracle : dwz::CountMethod::kDwork;
    return dwz::affine_count(dwz::parse_poly(text, n, f), k, f, o);
  }, py::arg("poly"), py::arg("n"), py::arg("k"), py::arg("field"), py::arg("oracle") = false);

  m.def("variety_count", [](const std::vector<std::string>& texts, std::uint32_t n, std::uint32_t k,
                            const dwz::FieldSpec& f, bool oracle) {
    dwz::CountOptions o;
    o.method = oracle ? dwz::CountMethod::kOracle : dwz::CountMethod::kDwork;
    return dwz::variety_count(parse_all(texts, n, f), k, f, o);
  }, py::arg("polys"), py::arg("n"), py::arg("k"), py::arg("field"), py::arg("oracle") = false);

  m.def("brute_toric", [](const std::string& text, std::uint32_t n, std::uint32_t k, const dwz::FieldSpec& f) {
    return dwz::brute_toric(dwz::parse_poly(text, n, f), k, f);
  }, py::arg("poly"), py::arg("n"), py::arg("k"), py::arg("field"));

  m.def("brute_affine", [](const std::string& text, std::uint32_t n, std::uint32_t k, const dwz::FieldSpec& f) {
    return dwz::brute_affine(dwz::parse_poly(text, n, f), k, f);
  }, py::arg("poly"), py::arg("n"), py::arg("k"), py::arg("field"));

  m.def("brute_counts", [](const std::string& text, std::uint32_t n, std::uint32_t D, const dwz::FieldSpec& f) {
    return dwz::brute_counts(dwz::parse_poly(text, n, f), D, f).counts;
  }, py::arg("poly"), py::arg("n"), py::arg("D"), py::arg("field"));

  m.def("zeta_series", [](std::uint64_t q, const std::vector<std::uint64_t>& counts) {
    return to_py(dwz::zeta_series(dwz::CountSeries{q, counts}));
  }, py::arg("q"), py::arg("counts"));

  m.def("recover_zeta", [](std::uint64_t q, const std::vector<std::uint64_t>& counts, std::uint64_t D1,
                           std::uint64_t D2) {
    const dwz::ZetaFn z = dwz::recover_zeta(dwz::CountSeries{q, counts}, D1, D2);
    return py::make_tuple(to_py(z.num), to_py(z.den));
  }, py::arg("q"), py::arg("counts"), py::arg("D1"), py::arg("D2"), "(numerator, denominator), low to high");

  m.def("jacobian_order", [](const std::vector<py::int_>& num, const std::vector<py::int_>& den, std::uint64_t q) {
    const dwz::JacobianResult j = dwz::jacobian_order(dwz::ZetaFn{from_py(num), from_py(den)}, q);
    return py::make_tuple(to_py(j.order), to_py(j.P));
  }, py::arg("numerator"), py::arg("denominator"), py::arg("q"), "(P(1), P)");

  m.def("default_bounds", &dwz::default_bounds, py::arg("n"), py::arg("d"));

  m.def("count_points", [](std::uint64_t t, std::uint32_t n, std::uint32_t d) {
    return dwz::count_points(t, dwz::ConeCtx::make(n, d));
  }, py::arg("t"), py::arg("n"), py::arg("d"), "number of cone points of weight <= t");

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = dwz::cli::run(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "(exit code, stdout, stderr) of the dwz command line");
}
