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

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dwz/ffield.hpp"

namespace dwz {

using Residue = std::uint64_t;

/// Element of R/(p^N) = (Z/p^N)[mu, pi]: entry c[j * a + i] is the
/// coefficient of pi^j mu^i, j < p - 1, i < a.
struct RElem {
  std::vector<Residue> c;
  std::uint64_t ctx_id = 0;

  friend bool operator==(const RElem&, const RElem&) = default;
};

/// Valuation normalised by ord(p) = 1, held exactly as pi_units / (p - 1).
struct Ord {
  std::int64_t pi_units = 0;
  std::uint32_t denom = 1;

  double value() const noexcept { return static_cast<double>(pi_units) / denom; }
  friend std::strong_ordering operator<=>(const Ord& x, const Ord& y) noexcept {
    return x.pi_units * static_cast<std::int64_t>(y.denom) <=> y.pi_units * static_cast<std::int64_t>(x.denom);
  }
  friend bool operator==(const Ord& x, const Ord& y) noexcept { return (x <=> y) == 0; }
};

/// The truncated ring R/(p^N), its Frobenius lift tau and Teichmuller map.
/// Immutable after build(); safe to share across threads.
class PadicCtx {
 public:
  /// Largest supported modulus p^N (products are formed in 128 bits).
  static constexpr Residue kMaxModulus = Residue{1} << 62;

  static PadicCtx build(const FieldSpec& field, std::uint32_t precision);

  const FieldSpec& field() const noexcept { return field_; }
  std::uint32_t p() const noexcept { return field_.p(); }
  std::uint32_t a() const noexcept { return field_.a(); }
  std::uint32_t precision() const noexcept { return N_; }
  Residue modulus() const noexcept { return mod_; }
  /// Number of residues per element, (p - 1) * a.
  std::uint32_t dim() const noexcept { return dim_; }
  std::uint64_t id() const noexcept { return id_; }

  /// Lift of h with coefficients in (-p/2, (p+1)/2), low-to-high, monic.
  const std::vector<std::int64_t>& h_lift() const noexcept { return h_lift_; }
  /// a x a matrix (row-major) of tau^i on the mu-power basis of R_0/(p^N);
  /// column j holds tau^i(mu^j). Defined for 0 <= i < a.
  std::span<const Residue> tau_table(std::uint32_t i) const;

  RElem zero() const;
  RElem one() const;
  RElem from_int(std::int64_t v) const;
  RElem pi() const;
  RElem mu() const;
  /// Element with entry (j, i) = value.
  RElem basis(std::uint32_t j, std::uint32_t i, Residue value = 1) const;
  /// Lift of an F_q element with coordinates in [0, p) on 1, mu, ...
  RElem lift(const FqElem& x) const;
  /// Reduction modulo pi, i.e. the image in R/(pi) = F_q.
  FqElem reduce_mod_pi(const RElem& x) const;

  RElem add(const RElem& x, const RElem& y) const;
  RElem sub(const RElem& x, const RElem& y) const;
  RElem neg(const RElem& x) const;
  RElem mul(const RElem& x, const RElem& y) const;
  RElem pow(RElem x, std::uint64_t e) const;
  /// Newton iteration s <- 2s - x s^2 from the inverse mod pi. Throws NotAUnit.
  RElem inv(const RElem& x) const;
  RElem teichmuller(const FqElem& x) const;
  /// tau^i for 0 <= i < a; throws IndexOutOfRange otherwise.
  RElem tau_pow(std::uint32_t i, const RElem& x) const;
  /// None when x = 0 mod p^N (valuation >= N, unobservable here).
  std::optional<Ord> pi_valuation(const RElem& x) const;

  bool is_zero(const RElem& x) const;
  /// True iff every entry other than the constant one vanishes.
  bool is_rational_integer(const RElem& x) const;

  // Raw kernels on dim()-length arrays; no validation.
  void mul_raw(const Residue* x, const Residue* y, Residue* out) const;
  void tau_raw(std::uint32_t i, const Residue* x, Residue* out) const;
  /// dim x dim row-major matrix of y -> s * y.
  void mul_matrix_raw(const Residue* s, Residue* out) const;

  Residue reduce(std::int64_t v) const noexcept;
  Residue mulmod(Residue x, Residue y) const noexcept {
    return static_cast<Residue>(static_cast<unsigned __int128>(x) * y % mod_);
  }

 private:
  PadicCtx(FieldSpec field, std::uint32_t N) : field_(std::move(field)), N_(N) {}
  void check(const RElem& x) const;
  RElem make() const;
  void r0_mul(const Residue* x, const Residue* y, unsigned __int128* acc) const;
  std::uint32_t newton_steps() const;

  FieldSpec field_;
  std::uint32_t N_;
  Residue mod_ = 1;
  std::uint32_t dim_ = 1;
  std::uint64_t id_ = 0;
  std::vector<std::int64_t> h_lift_;
  std::vector<Residue> mu_power_a_;           // mu^a on 1..mu^{a-1}
  std::vector<std::vector<Residue>> tau_;     // tau^i tables, i < a
};

/// p-adic valuation of an integer, v_p(0) = +inf represented as max.
std::uint32_t vp(Residue v, std::uint32_t p) noexcept;
/// Saturating p^e; returns 0 if it exceeds `limit`.
Residue checked_pow(std::uint64_t p, std::uint64_t e, Residue limit);

}  // namespace dwz
