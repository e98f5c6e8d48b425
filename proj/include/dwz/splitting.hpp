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

#include <cstdint>
#include <vector>

#include "dwz/padic.hpp"

namespace dwz {

/// Coefficients lambda_0..lambda_{t~} of theta(z) = exp(pi z - pi z^p) mod p^N.
struct ThetaTable {
  std::uint32_t degree = 0;      // t~
  std::vector<RElem> lambdas;    // length degree + 1, all in R_1
};

/// t~ = ceil(p^2 N / (p - 1)) - 1.
std::uint32_t theta_degree(std::uint32_t p, std::uint32_t N);
/// Guard precision used while dividing by r in the exp recurrence.
std::uint32_t theta_guard_precision(std::uint32_t p, std::uint32_t N, std::uint32_t degree);

/// Throws PrecisionLoss if an exact division fails.
ThetaTable compute_theta(const PadicCtx& ctx);
ThetaTable compute_theta(const PadicCtx& ctx, std::uint32_t degree);

/// Sum of the lambdas: a primitive p-th root of unity mod p^N.
RElem theta_at_one(const ThetaTable& table, const PadicCtx& ctx);

}  // namespace dwz
