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

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "dwz/dwork.hpp"
#include "dwz/ffield.hpp"
#include "dwz/oracle.hpp"

namespace dwz {

/// r(T) / s(T), integer coefficients low-to-high, constant terms 1, coprime.
struct ZetaFn {
  std::vector<mpz_class> num;
  std::vector<mpz_class> den;

  friend bool operator==(const ZetaFn&, const ZetaFn&) = default;
};

enum class CountMethod { kDwork, kOracle };

struct CountOptions {
  CountMethod method = CountMethod::kDwork;
  ToricOptions toric;
  std::uint64_t enum_cap = kDefaultEnumCap;
  /// When set, every toric_count run is appended here.
  std::vector<ToricResult>* log = nullptr;
};

/// Zeros on (F_{q^k}^*)^n by the selected method.
std::uint64_t toric_points(const Poly& f, std::uint32_t k, const FieldSpec& field, const CountOptions& opts);
/// Zeros on F_{q^k}^n via the torus decomposition.
std::uint64_t affine_count(const Poly& f, std::uint32_t k, const FieldSpec& field, const CountOptions& opts = {});
/// Common zeros of fs by inclusion-exclusion over products.
std::uint64_t variety_count(const std::vector<Poly>& fs, std::uint32_t k, const FieldSpec& field,
                            const CountOptions& opts = {});
/// affine_count (or variety_count) for k = 1..D.
CountSeries count_series(const std::vector<Poly>& fs, std::uint32_t D, const FieldSpec& field,
                         const CountOptions& opts = {});

/// Coefficients z_0..z_D of exp(sum N_k T^k / k). Throws InexactDivision.
std::vector<mpz_class> zeta_series(const CountSeries& counts);
/// First `terms` power-series coefficients of r/s.
std::vector<mpz_class> expand(const ZetaFn& z, std::size_t terms);
/// N_1..N_D recovered from a zeta function by the log-derivative.
std::vector<mpz_class> counts_from_zeta(const ZetaFn& z, std::size_t D);

/// Pade-type recovery with deg r <= D1, deg s <= D2. Throws NoSolution.
ZetaFn recover_zeta(const CountSeries& counts, std::uint64_t D1, std::uint64_t D2);
/// (2^{4n+4} d^n, 2^{4n+4} d^n), saturating at UINT64_MAX.
std::pair<std::uint64_t, std::uint64_t> default_bounds(std::uint32_t n, std::uint32_t d);

struct JacobianResult {
  std::vector<mpz_class> P;  // low-to-high, P(0) = 1
  mpz_class order;           // P(1)
};

/// Strip (1 - qT) and cyclotomic content from an affine curve's zeta function.
/// Throws NotACurveZeta.
JacobianResult jacobian_order(const ZetaFn& zv, std::uint64_t q);

/// deg P even and leading coefficient q^{deg P / 2}.
bool weil_shape(const std::vector<mpz_class>& P, std::uint64_t q);

}  // namespace dwz
