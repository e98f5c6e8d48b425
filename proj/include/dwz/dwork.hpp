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
#include <memory>
#include <optional>
#include <vector>

#include "dwz/cone.hpp"
#include "dwz/ffield.hpp"
#include "dwz/padic.hpp"
#include "dwz/splitting.hpp"

namespace dwz {

/// F = prod_j theta(a_j X^j) mod p^N on cone points of weight <= t~.
struct FSeries {
  std::shared_ptr<const MonomialIndex> index;
  std::uint32_t dim = 1;
  std::vector<Residue> data;  // index->size() * dim

  std::uint32_t degree() const noexcept { return index->bound(); }
  const Residue* coeff(std::size_t i) const noexcept { return data.data() + i * dim; }
  /// Coefficient at r (zero outside the index).
  RElem at(std::span<const std::uint32_t> r, const PadicCtx& ctx) const;
};

/// W x W matrix of ring elements. Row u stores columns [0, row_len(u)).
/// Entries outside the stored prefix are zero. With a weight budget b, the
/// prefix of row u is every v with w(u) + w(v) <= b ("staircase" storage);
/// without one, storage is dense.
class SemiMatrix {
 public:
  /// Dense zero matrix.
  SemiMatrix(std::size_t W, std::uint32_t dim);
  /// Staircase zero matrix over the index of the given weights (ascending).
  SemiMatrix(std::vector<std::uint32_t> weights, std::uint32_t budget, std::uint32_t dim);

  std::size_t size() const noexcept { return row_len_.size(); }
  std::uint32_t dim() const noexcept { return dim_; }
  bool pruned() const noexcept { return budget_.has_value(); }
  std::optional<std::uint32_t> budget() const noexcept { return budget_; }
  std::span<const std::uint32_t> weights() const noexcept { return weights_; }
  std::size_t row_len(std::size_t u) const noexcept { return row_len_[u]; }
  /// Number of columns v with w(v) <= w (the whole width when dense).
  std::size_t prefix(std::int64_t w) const noexcept;

  Residue* row(std::size_t u) noexcept { return data_.data() + row_off_[u]; }
  const Residue* row(std::size_t u) const noexcept { return data_.data() + row_off_[u]; }
  /// Pointer to entry (u, v), or nullptr when outside storage.
  const Residue* entry(std::size_t u, std::size_t v) const noexcept {
    return v < row_len_[u] ? row(u) + v * dim_ : nullptr;
  }
  RElem get(std::size_t u, std::size_t v, const PadicCtx& ctx) const;
  /// Throws IndexOutOfRange when (u, v) is outside storage.
  void set(std::size_t u, std::size_t v, const RElem& x);
  /// Number of stored ring elements.
  std::size_t stored() const noexcept { return data_.size() / dim_; }

  friend bool operator==(const SemiMatrix&, const SemiMatrix&) = default;

 private:
  void layout();

  std::uint32_t dim_;
  std::vector<std::uint32_t> weights_;
  std::optional<std::uint32_t> budget_;
  std::vector<std::size_t> row_len_;
  std::vector<std::size_t> row_off_;
  std::vector<Residue> data_;
};

/// F mod p^N on weights <= theta.degree. f must be nonzero.
FSeries compute_F(const Poly& f, const ThetaTable& theta, const PadicCtx& ctx, const ConeCtx& cc);

/// t = ceil(p^2 N / (p - 1)^2) - 1.
std::uint32_t matrix_weight_bound(std::uint32_t p, std::uint32_t N);

/// Entry (u, v) = tau^{a-1}(F_{pu - v}) over the points of weight <= t.
/// Pruned storage keeps only w(u) + w(v) <= t. Throws SizeCapExceeded if W > size_cap.
SemiMatrix build_A(const FSeries& F, std::uint32_t t, const PadicCtx& ctx, bool pruned,
                   std::uint64_t size_cap = UINT64_MAX);

/// tau^i applied entrywise, i in [0, a).
SemiMatrix tau_apply(const SemiMatrix& X, std::uint32_t i, const PadicCtx& ctx);
/// X * tau^i(Y). When X is pruned with budget b, terms with w(u) + w(x) + w(v) > b are dropped.
SemiMatrix twisted_mul(const SemiMatrix& X, const SemiMatrix& Y, std::uint32_t i, const PadicCtx& ctx);

/// (prod_{i<a} tau^{-i}(A))^k, square-and-multiply on (r mod a, M_r) pairs up to a,
/// then ordinary powering. Dense arithmetic.
SemiMatrix semilinear_power(const SemiMatrix& A, std::uint32_t a, std::uint64_t k, const PadicCtx& ctx);

/// Left-to-right prod_{i<m} tau^{-i}(A).
SemiMatrix semilinear_prefix(const SemiMatrix& A, std::uint64_t m, const PadicCtx& ctx);

/// Sum of diagonal entries.
RElem trace(const SemiMatrix& B, const PadicCtx& ctx);

/// Tr((prod_{i<a} tau^{-i}(A))^k). A pruned matrix yields the same trace mod p^N
/// while only forming products along weight-bounded cycles; F is needed for
/// the diagonal when a k = 1.
RElem frobenius_trace(const SemiMatrix& A, const FSeries& F, std::uint32_t t, std::uint64_t k,
                      const PadicCtx& ctx);

struct ToricOptions {
  std::optional<std::uint32_t> precision;     // N; default (n + 1) a k
  std::optional<std::uint32_t> weight_bound;  // t; default ceil(p^2 N/(p-1)^2) - 1
  std::uint64_t size_cap = 30000;             // W cap
  bool pruned = true;                         // false: dense B via semilinear_power
};

struct PhaseTimes {
  double theta = 0, F = 0, matrix = 0, power = 0;
};

struct ToricResult {
  std::optional<std::uint64_t> count;  // N_k*, when exact
  Residue bracket = 0;                 // ((q^k-1)^{n+1} T + (q^k-1)^n) mod p^N
  Residue trace = 0;                   // T mod p^N
  bool exact = false;
  std::uint32_t N = 0, t = 0, t_tilde = 0;
  std::uint64_t W = 0, W_tilde = 0;
  std::uint32_t d = 0;
  PhaseTimes times;
};

/// Number of zeros of f on (F_{q^k}^*)^n. Nonzero constants give 0.
ToricResult toric_count(const Poly& f, std::uint32_t k, const FieldSpec& field, const ToricOptions& opts = {});

}  // namespace dwz
