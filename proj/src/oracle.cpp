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

#include "dwz/oracle.hpp"

#include <string>

#include "dwz/errors.hpp"

namespace dwz {

ExtField ExtField::make(const FieldSpec& base, std::uint32_t k) {
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "extension degree must be >= 1");
  return ExtField(base, k, find_irreducible(base, k));
}

std::uint64_t ExtField::order() const {
  const std::uint64_t q = base_.q();
  unsigned __int128 out = 1;
  for (std::uint32_t i = 0; i < k_; ++i) {
    out *= q;
    if (out > (static_cast<unsigned __int128>(1) << 63)) {
      throw Error(ErrorKind::kCapExceeded, "q^k does not fit in 63 bits");
    }
  }
  return static_cast<std::uint64_t>(out);
}

ExtField::Elem ExtField::zero() const { return Elem(k_, base_.zero()); }

ExtField::Elem ExtField::one() const { return embed(base_.one()); }

ExtField::Elem ExtField::embed(const FqElem& c) const {
  Elem out = zero();
  out[0] = c;
  return out;
}

ExtField::Elem ExtField::decode(std::uint64_t index) const {
  const std::uint64_t q = base_.q();
  Elem out = zero();
  for (std::uint32_t i = 0; i < k_; ++i) {
    out[i] = base_.decode(index % q);
    index /= q;
  }
  return out;
}

bool ExtField::is_zero(const Elem& x) const {
  for (const auto& c : x) {
    if (!base_.is_zero(c)) return false;
  }
  return true;
}

ExtField::Elem ExtField::add(const Elem& x, const Elem& y) const {
  Elem out(k_);
  for (std::uint32_t i = 0; i < k_; ++i) out[i] = base_.add(x[i], y[i]);
  return out;
}

ExtField::Elem ExtField::sub(const Elem& x, const Elem& y) const {
  Elem out(k_);
  for (std::uint32_t i = 0; i < k_; ++i) out[i] = base_.sub(x[i], y[i]);
  return out;
}

ExtField::Elem ExtField::mul(const Elem& x, const Elem& y) const {
  std::vector<FqElem> wide(2 * k_ - 1, base_.zero());
  for (std::uint32_t i = 0; i < k_; ++i) {
    if (base_.is_zero(x[i])) continue;
    for (std::uint32_t j = 0; j < k_; ++j) wide[i + j] = base_.add(wide[i + j], base_.mul(x[i], y[j]));
  }
  // g is monic: z^k = -(g_0 + ... + g_{k-1} z^{k-1})
  for (std::size_t d = wide.size(); d-- > k_;) {
    const FqElem c = wide[d];
    if (base_.is_zero(c)) continue;
    for (std::uint32_t i = 0; i < k_; ++i) wide[d - k_ + i] = base_.sub(wide[d - k_ + i], base_.mul(c, g_[i]));
  }
  wide.resize(k_);
  return wide;
}

ExtField::Elem ExtField::pow(Elem x, std::uint64_t e) const {
  Elem out = one();
  while (e != 0) {
    if (e & 1) out = mul(out, x);
    e >>= 1;
    if (e != 0) x = mul(x, x);
  }
  return out;
}

ExtField::Elem ExtField::frobenius(const Elem& x) const { return pow(x, base_.q()); }

ExtField::Elem ExtField::trace(const Elem& x) const {
  Elem acc = zero(), cur = x;
  for (std::uint32_t i = 0; i < k_; ++i) {
    acc = add(acc, cur);
    cur = frobenius(cur);
  }
  return acc;
}

ExtField::Elem ExtField::norm(const Elem& x) const {
  Elem acc = one(), cur = x;
  for (std::uint32_t i = 0; i < k_; ++i) {
    acc = mul(acc, cur);
    cur = frobenius(cur);
  }
  return acc;
}

bool ExtField::in_base(const Elem& x) const {
  for (std::uint32_t i = 1; i < k_; ++i) {
    if (!base_.is_zero(x[i])) return false;
  }
  return true;
}

namespace {

std::uint64_t enumerate(const Poly& f, std::uint32_t k, const FieldSpec& field, std::uint64_t enum_cap,
                        bool torus) {
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "k must be >= 1");
  const ExtField ext = ExtField::make(field, k);
  const std::uint64_t Q = ext.order();
  const std::uint64_t base = torus ? Q - 1 : Q;
  const std::uint32_t n = f.n;
  unsigned __int128 points = 1;
  bool over = false;
  for (std::uint32_t i = 0; i < n && !over; ++i) {
    points *= base;
    over = points > UINT64_MAX;
  }
  if (over || points > enum_cap) {
    std::string what = "enumeration of " + std::to_string(base) + "^" + std::to_string(n);
    if (!over) what += " = " + std::to_string(static_cast<std::uint64_t>(points));
    throw Error(ErrorKind::kCapExceeded, what + " points exceeds cap " + std::to_string(enum_cap));
  }
  if (f.is_zero()) return static_cast<std::uint64_t>(points);

  std::vector<ExtField::Elem> elems;
  elems.reserve(base);
  for (std::uint64_t i = torus ? 1 : 0; i < Q; ++i) elems.push_back(ext.decode(i));

  // powers[i][x][e] = x^e for variable x_{i+1}
  std::vector<std::uint32_t> max_deg(n, 0);
  for (const auto& [e, c] : f.terms) {
    for (std::uint32_t i = 0; i < n; ++i) max_deg[i] = std::max(max_deg[i], e[i]);
  }
  std::vector<std::vector<std::vector<ExtField::Elem>>> powers(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    powers[i].resize(elems.size());
    for (std::size_t x = 0; x < elems.size(); ++x) {
      auto& tab = powers[i][x];
      tab.push_back(ext.one());
      for (std::uint32_t e = 1; e <= max_deg[i]; ++e) tab.push_back(ext.mul(tab.back(), elems[x]));
    }
  }
  std::vector<std::pair<const Poly::Exponent*, ExtField::Elem>> terms;
  for (const auto& [e, c] : f.terms) terms.emplace_back(&e, ext.embed(c));

  std::uint64_t count = 0;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    ExtField::Elem value = ext.zero();
    for (const auto& [e, c] : terms) {
      ExtField::Elem m = c;
      for (std::uint32_t i = 0; i < n; ++i) {
        if ((*e)[i] != 0) m = ext.mul(m, powers[i][idx[i]][(*e)[i]]);
      }
      value = ext.add(value, m);
    }
    if (ext.is_zero(value)) ++count;
    std::uint32_t i = 0;
    while (i < n && ++idx[i] == elems.size()) idx[i++] = 0;
    if (i == n) break;
  }
  return count;
}

}  // namespace

std::uint64_t brute_toric(const Poly& f, std::uint32_t k, const FieldSpec& field, std::uint64_t enum_cap) {
  return enumerate(f, k, field, enum_cap, true);
}

std::uint64_t brute_affine(const Poly& f, std::uint32_t k, const FieldSpec& field, std::uint64_t enum_cap) {
  return enumerate(f, k, field, enum_cap, false);
}

CountSeries brute_counts(const Poly& f, std::uint32_t D, const FieldSpec& field, std::uint64_t enum_cap) {
  CountSeries out{field.q(), {}};
  for (std::uint32_t k = 1; k <= D; ++k) out.counts.push_back(brute_affine(f, k, field, enum_cap));
  return out;
}

}  // namespace dwz
