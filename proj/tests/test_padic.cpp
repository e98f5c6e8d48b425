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

#include <doctest.h>

#include <random>

#include "dwz/errors.hpp"
#include "dwz/padic.hpp"

using namespace dwz;

namespace {

RElem random_elem(const PadicCtx& ctx, std::mt19937_64& rng) {
  RElem x = ctx.zero();
  for (auto& c : x.c) c = rng() % ctx.modulus();
  return x;
}

RElem random_unit(const PadicCtx& ctx, std::mt19937_64& rng) {
  while (true) {
    RElem x = random_elem(ctx, rng);
    if (!ctx.field().is_zero(ctx.reduce_mod_pi(x))) return x;
  }
}

struct Case {
  std::uint32_t p, a, N;
};

const std::vector<Case> kCases{{2, 1, 5}, {3, 1, 4}, {5, 1, 3}, {7, 1, 2}, {2, 2, 6}, {3, 2, 3}, {2, 3, 4}, {5, 2, 2}, {2, 4, 3}};

}  // namespace

TEST_CASE("defining relations") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const PadicCtx ctx = PadicCtx::build(FieldSpec::prime_field(p), 4);
    const RElem pi = ctx.pi();
    CHECK(ctx.mul(pi, ctx.pow(pi, p - 2)) == ctx.from_int(-static_cast<std::int64_t>(p)));
    CHECK(ctx.mul(pi, ctx.one()) == pi);
    CHECK(ctx.dim() == p - 1);
  }
  const PadicCtx c3 = PadicCtx::build(FieldSpec::prime_field(3), 2);
  const RElem one = c3.one(), pi = c3.pi();
  CHECK(c3.mul(c3.add(one, pi), c3.sub(one, pi)) == c3.from_int(4));
}

TEST_CASE("ring axioms") {
  std::mt19937_64 rng(3);
  for (const Case& c : kCases) {
    const PadicCtx ctx = PadicCtx::build(FieldSpec::make(c.p, c.a), c.N);
    for (int it = 0; it < 100; ++it) {
      const RElem x = random_elem(ctx, rng), y = random_elem(ctx, rng), z = random_elem(ctx, rng);
      CHECK(ctx.mul(ctx.mul(x, y), z) == ctx.mul(x, ctx.mul(y, z)));
      CHECK(ctx.mul(x, y) == ctx.mul(y, x));
      CHECK(ctx.mul(x, ctx.add(y, z)) == ctx.add(ctx.mul(x, y), ctx.mul(x, z)));
      CHECK(ctx.add(x, ctx.neg(x)) == ctx.zero());
    }
  }
}

TEST_CASE("inversion") {
  const PadicCtx c3 = PadicCtx::build(FieldSpec::prime_field(3), 2);
  CHECK(c3.inv(c3.one()) == c3.one());
  CHECK(c3.inv(c3.from_int(2)) == c3.from_int(5));
  CHECK_THROWS_AS(c3.inv(c3.pi()), Error);
  try {
    c3.inv(c3.pi());
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kNotAUnit);
  }
  std::mt19937_64 rng(5);
  int checked = 0;
  for (const Case& c : kCases) {
    const PadicCtx ctx = PadicCtx::build(FieldSpec::make(c.p, c.a), c.N);
    for (int it = 0; it < 120; ++it, ++checked) {
      const RElem x = random_unit(ctx, rng);
      CHECK(ctx.mul(x, ctx.inv(x)) == ctx.one());
    }
  }
  CHECK(checked >= 1000);
}

TEST_CASE("teichmuller lift") {
  const PadicCtx c3 = PadicCtx::build(FieldSpec::prime_field(3), 2);
  const FieldSpec& f3 = c3.field();
  CHECK(c3.teichmuller(f3.zero()) == c3.zero());
  CHECK(c3.teichmuller(f3.one()) == c3.one());
  CHECK(c3.teichmuller(f3.from_int(2)) == c3.from_int(8));
  std::mt19937_64 rng(9);
  for (const Case& c : kCases) {
    const PadicCtx ctx = PadicCtx::build(FieldSpec::make(c.p, c.a), c.N);
    const FieldSpec& f = ctx.field();
    const std::uint64_t q = f.q();
    for (int it = 0; it < 30; ++it) {
      const FqElem x = f.decode(rng() % q), y = f.decode(rng() % q);
      const RElem tx = ctx.teichmuller(x);
      CHECK(ctx.reduce_mod_pi(tx) == x);
      for (std::uint32_t j = 1; j + 1 < c.p; ++j) {
        for (std::uint32_t i = 0; i < c.a; ++i) CHECK(tx.c[j * c.a + i] == 0);
      }
      // independent oracle: the limit of lift(x)^{q^m} is reached at m = N - 1
      RElem power = ctx.lift(x);
      for (std::uint32_t m = 0; m + 1 < c.N; ++m) power = ctx.pow(power, q);
      CHECK(tx == power);
      CHECK(ctx.teichmuller(f.mul(x, y)) == ctx.mul(tx, ctx.teichmuller(y)));
      if (!f.is_zero(x)) CHECK(ctx.pow(tx, q - 1) == ctx.one());
    }
  }
}

TEST_CASE("frobenius lift tau") {
  std::mt19937_64 rng(13);
  for (const Case& c : kCases) {
    const PadicCtx ctx = PadicCtx::build(FieldSpec::make(c.p, c.a), c.N);
    const FieldSpec& f = ctx.field();
    // h_lift(tau(mu)) = 0 and tau(mu) = mu^p mod p
    RElem tmu = c.a > 1 ? ctx.tau_pow(1, ctx.mu()) : ctx.mu();
    RElem acc = ctx.zero();
    for (std::size_t k = ctx.h_lift().size(); k-- > 0;) acc = ctx.add(ctx.mul(acc, tmu), ctx.from_int(ctx.h_lift()[k]));
    CHECK(ctx.is_zero(acc));
    CHECK(ctx.reduce_mod_pi(tmu) == f.pow(ctx.reduce_mod_pi(ctx.mu()), c.p));
    for (std::size_t k = 0; k < ctx.h_lift().size(); ++k) {
      const std::int64_t v = ctx.h_lift()[k];
      CHECK(2 * v > -static_cast<std::int64_t>(c.p));
      CHECK(2 * v < static_cast<std::int64_t>(c.p) + 1);
      CHECK(((v % static_cast<std::int64_t>(c.p)) + c.p) % c.p == f.modulus()[k]);
    }
    for (int it = 0; it < 30; ++it) {
      const RElem x = random_elem(ctx, rng), y = random_elem(ctx, rng);
      CHECK(ctx.tau_pow(0, x) == x);
      // tau^a = id
      RElem z = x;
      for (std::uint32_t i = 0; i < c.a; ++i) z = c.a > 1 ? ctx.tau_pow(1, z) : z;
      CHECK(z == x);
      if (c.a > 1) {
        CHECK(ctx.tau_pow(1, ctx.mul(x, y)) == ctx.mul(ctx.tau_pow(1, x), ctx.tau_pow(1, y)));
        CHECK(ctx.tau_pow(1, ctx.add(x, y)) == ctx.add(ctx.tau_pow(1, x), ctx.tau_pow(1, y)));
        for (std::uint32_t i = 2; i < c.a; ++i) CHECK(ctx.tau_pow(i, x) == ctx.tau_pow(1, ctx.tau_pow(i - 1, x)));
      }
      const FqElem e = f.decode(rng() % f.q());
      const RElem te = ctx.teichmuller(e);
      CHECK((c.a > 1 ? ctx.tau_pow(1, te) : te) == ctx.teichmuller(f.pow(e, c.p)));
      CHECK(ctx.tau_pow(c.a - 1, ctx.from_int(17)) == ctx.from_int(17));
      CHECK(ctx.tau_pow(c.a - 1, ctx.pi()) == ctx.pi());
    }
    CHECK_THROWS_AS(ctx.tau_pow(c.a, ctx.one()), Error);
  }
  const PadicCtx c9 = PadicCtx::build(FieldSpec::make(3, 2, std::vector<std::uint32_t>{1, 0, 1}), 2);
  const RElem tmu = c9.tau_pow(1, c9.mu());
  CHECK(c9.is_zero(c9.add(c9.mul(tmu, tmu), c9.one())));
}

TEST_CASE("pi valuation") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const PadicCtx ctx = PadicCtx::build(FieldSpec::prime_field(p), 5);
    CHECK(ctx.pi_valuation(ctx.from_int(p)) == Ord{static_cast<std::int64_t>(p - 1), p - 1});
    CHECK(ctx.pi_valuation(ctx.pi()) == Ord{1, p - 1});
    CHECK(ctx.pi_valuation(ctx.pi())->value() == doctest::Approx(1.0 / (p - 1)));
    CHECK_FALSE(ctx.pi_valuation(ctx.zero()).has_value());
    CHECK_FALSE(ctx.pi_valuation(ctx.pow(ctx.pi(), 5 * (p - 1))).has_value());
  }
  std::mt19937_64 rng(17);
  for (const Case& c : kCases) {
    const PadicCtx ctx = PadicCtx::build(FieldSpec::make(c.p, c.a), c.N);
    const Ord cap{static_cast<std::int64_t>(c.N) * (c.p - 1), c.p - 1};
    for (int it = 0; it < 100; ++it) {
      // bias towards non-units
      RElem x = ctx.mul(random_elem(ctx, rng), ctx.pow(ctx.pi(), rng() % 4));
      RElem y = ctx.mul(random_elem(ctx, rng), ctx.pow(ctx.pi(), rng() % 4));
      const auto vx = ctx.pi_valuation(x), vy = ctx.pi_valuation(y);
      const auto vxy = ctx.pi_valuation(ctx.mul(x, y));
      if (!vx || !vy) continue;
      const Ord sum{vx->pi_units + vy->pi_units, c.p - 1};
      if (!vxy) {
        CHECK(sum >= cap);
        continue;
      }
      CHECK(*vxy >= sum);
      if (sum < cap) CHECK(*vxy == sum);
    }
  }
}

TEST_CASE("contexts do not mix") {
  const PadicCtx a = PadicCtx::build(FieldSpec::prime_field(3), 2);
  const PadicCtx b = PadicCtx::build(FieldSpec::prime_field(3), 2);
  try {
    a.add(a.one(), b.one());
    FAIL("expected CtxMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kCtxMismatch);
  }
  CHECK_THROWS_AS(PadicCtx::build(FieldSpec::prime_field(2), 63), Error);
  CHECK_THROWS_AS(PadicCtx::build(FieldSpec::prime_field(2), 0), Error);
}
