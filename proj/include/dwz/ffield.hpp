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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dwz {

bool is_prime(std::uint64_t n) noexcept;

/// Element of F_q = F_p[y]/(h): coordinates on 1, y, ..., y^{a-1}, each in [0, p).
struct FqElem {
  std::vector<std::uint32_t> coeffs;

  friend bool operator==(const FqElem&, const FqElem&) = default;
  friend auto operator<=>(const FqElem&, const FqElem&) = default;
};

/// The finite field F_q = F_p[y]/(h) with h monic irreducible of degree a.
/// Immutable after construction.
class FieldSpec {
 public:
  /// Validates (p, a, h). When h is absent the first irreducible monic
  /// polynomial of degree a in lexicographic order (constant term varying
  /// fastest) is used.
  static FieldSpec make(std::uint32_t p, std::uint32_t a,
                        std::optional<std::vector<std::uint32_t>> h = std::nullopt);

  /// F_p itself, modelled as F_p[y]/(y).
  static FieldSpec prime_field(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t a() const noexcept { return a_; }
  /// q = p^a; throws SizeCapExceeded if it does not fit in 63 bits.
  std::uint64_t q() const;
  /// h, low-to-high, length a + 1, leading coefficient 1.
  const std::vector<std::uint32_t>& modulus() const noexcept { return h_; }

  FqElem zero() const;
  FqElem one() const;
  FqElem from_int(std::int64_t v) const;
  /// Coordinates on 1, y, ..., y^{a-1}; shorter vectors are zero-padded.
  FqElem from_coeffs(std::span<const std::int64_t> c) const;
  FqElem generator_y() const;

  bool is_zero(const FqElem& x) const noexcept;
  bool in_prime_field(const FqElem& x) const noexcept;

  FqElem add(const FqElem& x, const FqElem& y) const;
  FqElem sub(const FqElem& x, const FqElem& y) const;
  FqElem neg(const FqElem& x) const;
  FqElem mul(const FqElem& x, const FqElem& y) const;
  /// Extended gcd of the representative with h. Throws DivisionByZero on 0.
  FqElem inv(const FqElem& x) const;
  FqElem pow(FqElem x, std::uint64_t e) const;

  /// Bijection F_q <-> [0, q): base-p digits of the coordinates.
  std::uint64_t encode(const FqElem& x) const;
  FqElem decode(std::uint64_t index) const;

  friend bool operator==(const FieldSpec& x, const FieldSpec& y) noexcept {
    return x.p_ == y.p_ && x.h_ == y.h_;
  }

 private:
  FieldSpec(std::uint32_t p, std::uint32_t a, std::vector<std::uint32_t> h)
      : p_(p), a_(a), h_(std::move(h)) {}
  void check(const FqElem& x) const;

  std::uint32_t p_ = 2;
  std::uint32_t a_ = 1;
  std::vector<std::uint32_t> h_;
};

/// Dense univariate polynomial over F_q, low-to-high, no trailing zeros.
using FqPoly = std::vector<FqElem>;

void trim(FqPoly& g, const FieldSpec& f);
FqPoly poly_sub(const FqPoly& x, const FqPoly& y, const FieldSpec& f);
FqPoly poly_mul(const FqPoly& x, const FqPoly& y, const FieldSpec& f);
FqPoly poly_mod(FqPoly x, const FqPoly& m, const FieldSpec& f);
FqPoly poly_gcd(FqPoly x, FqPoly y, const FieldSpec& f);
FqPoly poly_powmod(const FqPoly& base, std::uint64_t e, const FqPoly& m, const FieldSpec& f);

/// g irreducible over F_q iff z^{q^k} = z mod g and gcd(z^{q^{k/l}} - z, g) = 1
/// for every prime l | k. g must be monic of degree >= 1.
bool is_irreducible(const FqPoly& g, const FieldSpec& f);

/// First monic irreducible of degree k over F_q in lexicographic order,
/// constant term fastest-varying.
FqPoly find_irreducible(const FieldSpec& f, std::uint32_t k);

/// Sparse multivariate polynomial over F_q in variables x1..xn.
struct Poly {
  using Exponent = std::vector<std::uint32_t>;

  std::uint32_t n = 0;
  std::map<Exponent, FqElem> terms;  // no zero coefficients

  bool is_zero() const noexcept { return terms.empty(); }
  /// Total degree; 0 for constants and for the zero polynomial.
  std::uint32_t degree() const noexcept;

  friend bool operator==(const Poly&, const Poly&) = default;
};

/// Grammar: poly := term ('+' term)*; term := coeff ('*' var)* | var ('*' var)*;
/// var := 'x' INDEX ('^' EXP)?; coeff := INT | '{' INT (',' INT)* '}'.
Poly parse_poly(std::string_view text, std::uint32_t n, const FieldSpec& f);
std::string render_poly(const Poly& g, const FieldSpec& f);

Poly poly_from_terms(std::uint32_t n, const std::vector<std::pair<Poly::Exponent, FqElem>>& terms,
                     const FieldSpec& f);
Poly multiply(const Poly& x, const Poly& y, const FieldSpec& f);
/// Sets the variables in `zero_mask` (bit i <-> x_{i+1}) to zero and drops
/// them, renumbering the survivors in order.
Poly restrict_to_zero(const Poly& g, std::uint32_t zero_mask);
/// Permutes variables: new variable i is old variable perm[i].
Poly permute_variables(const Poly& g, std::span<const std::uint32_t> perm);
FqElem evaluate(const Poly& g, std::span<const FqElem> point, const FieldSpec& f);

}  // namespace dwz
