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

#include "dwz/ffield.hpp"

namespace dwz {

/// Point counts N_1, ..., N_D over F_q, F_{q^2}, ...
struct CountSeries {
  std::uint64_t q = 0;
  std::vector<std::uint64_t> counts;

  friend bool operator==(const CountSeries&, const CountSeries&) = default;
};

/// Default number of polynomial evaluations the brute-force counters allow.
inline constexpr std::uint64_t kDefaultEnumCap = 100'000'000;

/// F_{q^k} = F_q[z]/(g), g the first monic irreducible of degree k over F_q.
class ExtField {
 public:
  using Elem = std::vector<FqElem>;  // coordinates on 1, z, ..., z^{k-1}

  static ExtField make(const FieldSpec& base, std::uint32_t k);

  const FieldSpec& base() const noexcept { return base_; }
  std::uint32_t k() const noexcept { return k_; }
  const FqPoly& modulus() const noexcept { return g_; }
  /// q^k; throws CapExceeded beyond 63 bits.
  std::uint64_t order() const;

  Elem zero() const;
  Elem one() const;
  Elem embed(const FqElem& c) const;
  /// Base-q digits of index give the coordinates.
  Elem decode(std::uint64_t index) const;
  bool is_zero(const Elem& x) const;

  Elem add(const Elem& x, const Elem& y) const;
  Elem sub(const Elem& x, const Elem& y) const;
  Elem mul(const Elem& x, const Elem& y) const;
  Elem pow(Elem x, std::uint64_t e) const;
  /// x^q, the generator of Gal(F_{q^k}/F_q).
  Elem frobenius(const Elem& x) const;
  /// Sum and product of the conjugates x^{q^i}.
  Elem trace(const Elem& x) const;
  Elem norm(const Elem& x) const;
  /// True iff every coordinate above the constant vanishes.
  bool in_base(const Elem& x) const;

 private:
  ExtField(FieldSpec base, std::uint32_t k, FqPoly g) : base_(std::move(base)), k_(k), g_(std::move(g)) {}

  FieldSpec base_;
  std::uint32_t k_;
  FqPoly g_;
};

/// Exhaustive count of zeros on (F_{q^k}^*)^n. Throws CapExceeded past enum_cap evaluations.
std::uint64_t brute_toric(const Poly& f, std::uint32_t k, const FieldSpec& field,
                          std::uint64_t enum_cap = kDefaultEnumCap);
/// Exhaustive count of zeros on F_{q^k}^n.
std::uint64_t brute_affine(const Poly& f, std::uint32_t k, const FieldSpec& field,
                           std::uint64_t enum_cap = kDefaultEnumCap);
/// brute_affine for k = 1..D.
CountSeries brute_counts(const Poly& f, std::uint32_t D, const FieldSpec& field,
                         std::uint64_t enum_cap = kDefaultEnumCap);

}  // namespace dwz
