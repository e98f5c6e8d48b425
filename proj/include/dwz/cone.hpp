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
#include <optional>
#include <span>
#include <vector>

namespace dwz {

/// Cone over the total-degree simplex: r_1 + ... + r_n <= d r_0.
struct ConeCtx {
  std::uint32_t n = 1;
  std::uint32_t d = 1;

  static ConeCtx make(std::uint32_t n, std::uint32_t d);
};

/// (r_0, r_1, ..., r_n).
using ExpoVec = std::vector<std::uint32_t>;

/// r_0 inside the cone, nullopt (+inf) outside.
std::optional<std::uint64_t> weight(std::span<const std::uint32_t> r, const ConeCtx& cc);

/// C(n, k) in 64 bits; saturates at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept;

/// Number of lattice points of weight <= t, sum over r_0 <= t of C(d r_0 + n, n).
/// Saturates at UINT64_MAX.
std::uint64_t count_points(std::uint64_t t, const ConeCtx& cc) noexcept;

/// Lattice points of weight <= t ordered by weight, then lexicographically on
/// (r_1, ..., r_n). Positions are computed combinatorially, not stored.
class MonomialIndex {
 public:
  /// Throws SizeCapExceeded when the point count exceeds size_cap.
  static MonomialIndex enumerate(std::uint32_t t, const ConeCtx& cc, std::uint64_t size_cap = UINT64_MAX);

  std::uint32_t bound() const noexcept { return t_; }
  const ConeCtx& cone() const noexcept { return cc_; }
  std::size_t size() const noexcept { return weights_.size(); }
  /// Coordinates (n + 1 entries) of point i.
  std::span<const std::uint32_t> point(std::size_t i) const noexcept {
    return {points_.data() + i * (cc_.n + 1), cc_.n + 1};
  }
  std::uint32_t weight_of(std::size_t i) const noexcept { return weights_[i]; }
  /// Number of points of weight <= w (w clamped to the bound).
  std::size_t prefix(std::int64_t w) const noexcept;
  /// Position of r, or nullopt if r has a negative-free form outside the index.
  std::optional<std::size_t> position(std::span<const std::uint32_t> r) const noexcept;
  /// Same for r given with signed coordinates (e.g. p u - v).
  std::optional<std::size_t> position_signed(std::span<const std::int64_t> r) const noexcept;

 private:
  MonomialIndex(std::uint32_t t, ConeCtx cc) : t_(t), cc_(cc) {}

  std::uint32_t t_;
  ConeCtx cc_;
  std::vector<std::uint32_t> points_;
  std::vector<std::uint32_t> weights_;
  std::vector<std::size_t> offsets_;            // offsets_[w] = prefix(w - 1)
  std::vector<std::vector<std::uint64_t>> binom_;  // binom_[m][s] = C(s + m, m), m <= n
};

}  // namespace dwz
