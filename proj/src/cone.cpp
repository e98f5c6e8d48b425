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

#include "dwz/cone.hpp"

#include <string>

#include "dwz/errors.hpp"

namespace dwz {

ConeCtx ConeCtx::make(std::uint32_t n, std::uint32_t d) {
  if (n == 0 || d == 0) throw Error(ErrorKind::kInvalidArgument, "cone needs n >= 1 and d >= 1");
  return ConeCtx{n, d};
}

std::optional<std::uint64_t> weight(std::span<const std::uint32_t> r, const ConeCtx& cc) {
  std::uint64_t s = 0;
  for (std::size_t i = 1; i < r.size(); ++i) s += r[i];
  if (s > static_cast<std::uint64_t>(cc.d) * r[0]) return std::nullopt;
  return r[0];
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(out);
}

std::uint64_t count_points(std::uint64_t t, const ConeCtx& cc) noexcept {
  unsigned __int128 total = 0;
  for (std::uint64_t r0 = 0; r0 <= t; ++r0) {
    const std::uint64_t b = binomial(static_cast<std::uint64_t>(cc.d) * r0 + cc.n, cc.n);
    if (b == UINT64_MAX) return UINT64_MAX;
    total += b;
    if (total > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(total);
}

MonomialIndex MonomialIndex::enumerate(std::uint32_t t, const ConeCtx& cc, std::uint64_t size_cap) {
  const std::uint64_t total = count_points(t, cc);
  if (total > size_cap) {
    throw Error(ErrorKind::kSizeCapExceeded,
                "W = " + std::to_string(total) + " exceeds size cap " + std::to_string(size_cap));
  }
  MonomialIndex ix(t, cc);
  const std::uint32_t n = cc.n;
  ix.points_.reserve(total * (n + 1));
  ix.weights_.reserve(total);
  ix.offsets_.reserve(t + 2);

  const std::uint64_t smax = static_cast<std::uint64_t>(cc.d) * t + 1;
  ix.binom_.assign(n + 2, std::vector<std::uint64_t>(smax + 2, 0));
  for (std::uint32_t m = 0; m <= n + 1; ++m) {
    for (std::uint64_t s = 0; s <= smax + 1; ++s) ix.binom_[m][s] = binomial(s + m, m);
  }

  std::vector<std::uint32_t> r(n + 1, 0);
  for (std::uint32_t r0 = 0; r0 <= t; ++r0) {
    ix.offsets_.push_back(ix.weights_.size());
    const std::uint32_t budget = cc.d * r0;
    r.assign(n + 1, 0);
    r[0] = r0;
    // lexicographic odometer on (r_1, ..., r_n) with sum <= budget
    std::uint32_t used = 0;
    while (true) {
      ix.points_.insert(ix.points_.end(), r.begin(), r.end());
      ix.weights_.push_back(r0);
      std::uint32_t i = n;
      while (i >= 1) {
        if (used < budget) {
          ++r[i];
          ++used;
          break;
        }
        used -= r[i];
        r[i] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  ix.offsets_.push_back(ix.weights_.size());
  return ix;
}

std::size_t MonomialIndex::prefix(std::int64_t w) const noexcept {
  if (w < 0) return 0;
  if (w >= static_cast<std::int64_t>(t_)) return weights_.size();
  return offsets_[static_cast<std::size_t>(w) + 1];
}

std::optional<std::size_t> MonomialIndex::position(std::span<const std::uint32_t> r) const noexcept {
  const std::uint32_t r0 = r[0];
  if (r0 > t_) return std::nullopt;
  const std::uint64_t budget = static_cast<std::uint64_t>(cc_.d) * r0;
  std::uint64_t s = budget;
  std::size_t rank = offsets_[r0];
  const std::uint32_t n = cc_.n;
  for (std::uint32_t i = 1; i <= n; ++i) {
    if (r[i] > s) return std::nullopt;
    const std::uint32_t m = n - i;
    // completions with coordinate i below r_i
    rank += binom_[m + 1][s] - binom_[m + 1][s - r[i]];
    s -= r[i];
  }
  return rank;
}

std::optional<std::size_t> MonomialIndex::position_signed(std::span<const std::int64_t> r) const noexcept {
  std::uint32_t buf[16];
  std::vector<std::uint32_t> heap;
  std::uint32_t* u = buf;
  if (r.size() > 16) {
    heap.resize(r.size());
    u = heap.data();
  }
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (r[i] < 0 || r[i] > UINT32_MAX) return std::nullopt;
    u[i] = static_cast<std::uint32_t>(r[i]);
  }
  return position({u, r.size()});
}

}  // namespace dwz
