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

#include "dwz/splitting.hpp"

#include <gmpxx.h>

#include <string>

#include "dwz/errors.hpp"

namespace dwz {

namespace {

// Element of R_1 / (p^Ng): coefficients on 1, pi, ..., pi^{p-2}.
using R1 = std::vector<mpz_class>;

struct R1Ring {
  std::uint32_t p;
  mpz_class mod;

  void normalize(R1& x) const {
    for (auto& c : x) {
      c %= mod;
      if (c < 0) c += mod;
    }
  }

  R1 mul(const R1& x, const R1& y) const {
    const std::size_t levels = p - 1;
    std::vector<mpz_class> tmp(2 * levels - 1, 0);
    for (std::size_t i = 0; i < levels; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < levels; ++j) tmp[i + j] += x[i] * y[j];
    }
    for (std::size_t l = tmp.size(); l-- > levels;) tmp[l - levels] -= tmp[l] * p;
    R1 out(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(levels));
    normalize(out);
    return out;
  }

  R1 times_pi(const R1& x) const {
    R1 out(p - 1);
    if (p == 2) {
      out[0] = -2 * x[0];
    } else {
      out[0] = -static_cast<long>(p) * x[p - 2];
      for (std::size_t j = 1; j + 1 < p; ++j) out[j] = x[j - 1];
    }
    normalize(out);
    return out;
  }
};

}  // namespace

std::uint32_t theta_degree(std::uint32_t p, std::uint32_t N) {
  const std::uint64_t num = static_cast<std::uint64_t>(p) * p * N;
  const std::uint64_t den = p - 1;
  return static_cast<std::uint32_t>((num + den - 1) / den - 1);
}

std::uint32_t theta_guard_precision(std::uint32_t p, std::uint32_t N, std::uint32_t degree) {
  return N + (degree + p - 2) / (p - 1) + 1;
}

ThetaTable compute_theta(const PadicCtx& ctx) { return compute_theta(ctx, theta_degree(ctx.p(), ctx.precision())); }

ThetaTable compute_theta(const PadicCtx& ctx, std::uint32_t degree) {
  const std::uint32_t p = ctx.p();
  const std::uint32_t guard = theta_guard_precision(p, ctx.precision(), degree);
  R1Ring ring{p, 0};
  mpz_ui_pow_ui(ring.mod.get_mpz_t(), p, guard);

  // e_r = pi^r / r!
  std::vector<R1> e(degree + 1, R1(p - 1, 0));
  e[0][0] = 1;
  for (std::uint32_t r = 1; r <= degree; ++r) {
    R1 x = ring.times_pi(e[r - 1]);
    std::uint32_t v = 0;
    std::uint32_t unit = r;
    while (unit % p == 0) {
      unit /= p;
      ++v;
    }
    mpz_class unit_inv;
    const mpz_class unit_z = unit;
    mpz_invert(unit_inv.get_mpz_t(), unit_z.get_mpz_t(), ring.mod.get_mpz_t());
    mpz_class pv;
    mpz_ui_pow_ui(pv.get_mpz_t(), p, v);
    for (auto& c : x) {
      c = c * unit_inv % ring.mod;
      if (!mpz_divisible_p(c.get_mpz_t(), pv.get_mpz_t())) {
        throw Error(ErrorKind::kPrecisionLoss, "exp coefficient " + std::to_string(r) + " not divisible by p^" +
                                                   std::to_string(v));
      }
      mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), pv.get_mpz_t());
    }
    e[r] = std::move(x);
  }

  // exp(-pi z^p) has coefficient (-1)^s e_s at z^{ps}
  const mpz_class mod_n = ctx.modulus();
  ThetaTable table;
  table.degree = degree;
  table.lambdas.reserve(degree + 1);
  for (std::uint32_t r = 0; r <= degree; ++r) {
    R1 acc(p - 1, 0);
    for (std::uint32_t s = 0; static_cast<std::uint64_t>(p) * s <= r; ++s) {
      R1 term = ring.mul(e[r - p * s], e[s]);
      for (std::size_t j = 0; j + 1 < p; ++j) acc[j] += (s % 2 == 0) ? term[j] : -term[j];
    }
    RElem out = ctx.zero();
    for (std::size_t j = 0; j + 1 < p; ++j) {
      mpz_class c = acc[j] % mod_n;
      if (c < 0) c += mod_n;
      out.c[j * ctx.a()] = c.get_ui();
    }
    table.lambdas.push_back(std::move(out));
  }
  return table;
}

RElem theta_at_one(const ThetaTable& table, const PadicCtx& ctx) {
  RElem acc = ctx.zero();
  for (const auto& l : table.lambdas) acc = ctx.add(acc, l);
  return acc;
}

}  // namespace dwz
