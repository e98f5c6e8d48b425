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

#include "dwz/splitting.hpp"
#include "oracles.hpp"

using namespace dwz;

TEST_CASE("theta degree and low coefficients") {
  CHECK(theta_degree(2, 3) == 11);
  CHECK(theta_degree(3, 2) == 8);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t N : {1u, 2u, 4u, 8u}) {
      const PadicCtx ctx = PadicCtx::build(FieldSpec::prime_field(p), N);
      const ThetaTable t = compute_theta(ctx);
      REQUIRE(t.lambdas.size() == theta_degree(p, N) + 1);
      CHECK(t.lambdas[0] == ctx.one());
      CHECK(t.lambdas[1] == ctx.pi());
      // lambda_r = pi^r / r! for r < p
      RElem fact = ctx.one();
      for (std::uint32_t r = 1; r < p && r <= t.degree; ++r) {
        fact = ctx.mul(fact, ctx.from_int(r));
        CHECK(t.lambdas[r] == ctx.mul(ctx.pow(ctx.pi(), r), ctx.inv(fact)));
      }
    }
  }
}

TEST_CASE("theta matches the closed form") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t N : {1u, 3u, 6u}) {
      const PadicCtx ctx = PadicCtx::build(FieldSpec::prime_field(p), N);
      const ThetaTable t = compute_theta(ctx);
      for (std::uint32_t r = 0; r <= t.degree; ++r) CHECK(t.lambdas[r] == testing::lambda_closed_form(r, ctx));
    }
  }
  // extension rings keep every lambda in R_1
  const PadicCtx c4 = PadicCtx::build(FieldSpec::make(3, 2), 3);
  for (const RElem& l : compute_theta(c4).lambdas) {
    for (std::uint32_t j = 0; j < 2; ++j) CHECK(l.c[j * 2 + 1] == 0);
  }
}

TEST_CASE("p = 2, N = 3, lambda_2") {
  // exp(pi z) exp(-pi z^2) at z^2: pi^2/2 - pi = 4/2 + 2 = 4 with pi = -2
  const PadicCtx ctx = PadicCtx::build(FieldSpec::prime_field(2), 3);
  CHECK(compute_theta(ctx).lambdas[2] == ctx.from_int(4));
}

TEST_CASE("theta(1) is a primitive p-th root of unity") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t N : {1u, 2u, 4u, 8u}) {
      const PadicCtx ctx = PadicCtx::build(FieldSpec::prime_field(p), N);
      const RElem z = theta_at_one(compute_theta(ctx), ctx);
      CHECK(ctx.pow(z, p) == ctx.one());
      if (p == 2 && N == 1) {
        CHECK(z == ctx.one());  // -1 = 1 mod 2
      } else {
        CHECK(z != ctx.one());
      }
      // z = 1 + pi mod pi^2
      const auto v = ctx.pi_valuation(ctx.sub(z, ctx.add(ctx.one(), ctx.pi())));
      if (v) CHECK(*v >= Ord{2, p - 1});
    }
  }
}

TEST_CASE("lambda decay bounds") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t N : {2u, 4u, 8u}) {
      const PadicCtx ctx = PadicCtx::build(FieldSpec::prime_field(p), N);
      const ThetaTable t = compute_theta(ctx);
      const double cap = N;
      for (std::uint32_t r = 1; r <= t.degree; ++r) {
        const auto v = ctx.pi_valuation(t.lambdas[r]);
        const double ord = v ? v->value() : cap;
        CHECK(std::min(ord, cap) > std::min((p - 1.0) * r / (p * p), cap - 1));
        if (r < p * p) CHECK(std::min(ord, cap) >= std::min(r / (p - 1.0), cap) - 1e-12);
      }
    }
  }
}
