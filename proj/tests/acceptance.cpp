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

// Acceptance run: one PASS/FAIL line per criterion, with its time budget.
// Pass --large to include the slow p = 3 curve count.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dwz/cone.hpp"
#include "dwz/dwork.hpp"
#include "dwz/errors.hpp"
#include "dwz/oracle.hpp"
#include "dwz/splitting.hpp"
#include "dwz/zeta.hpp"
#include "oracles.hpp"

using namespace dwz;

namespace {

// Time budgets in seconds.
constexpr double kBudget[] = {0, 1, 300, 1800, 300, 600, 300, 1800, 60, 60, 60};

struct Ledger {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

struct Run {
  std::uint32_t n, d;
  ToricResult r;
};
std::vector<Run> g_runs;  // every toric run, for the Blichfeldt check

ToricResult toric(const Poly& f, std::uint32_t k, const FieldSpec& field, const ToricOptions& o = {}) {
  ToricResult r = toric_count(f, k, field, o);
  g_runs.push_back({f.n, f.degree(), r});
  return r;
}

std::string show(const Poly& f, const FieldSpec& field) { return render_poly(f, field); }

Residue powmod(Residue b, std::uint64_t e, const PadicCtx& ctx) {
  Residue out = 1 % ctx.modulus();
  b %= ctx.modulus();
  for (; e; e >>= 1, b = ctx.mulmod(b, b)) {
    if (e & 1) out = ctx.mulmod(out, b);
  }
  return out;
}

void criterion1(Ledger& L) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    for (std::uint32_t N : {2u, 4u, 8u}) {
      const PadicCtx ctx = PadicCtx::build(FieldSpec::prime_field(p), N);
      const ThetaTable th = compute_theta(ctx);
      const std::string tag = "p=" + std::to_string(p) + " N=" + std::to_string(N);
      // lambda_r = pi^r / r! below p
      RElem pi_r = ctx.one();
      std::int64_t fact = 1;
      for (std::uint32_t r = 0; r < p; ++r) {
        if (r > 0) {
          pi_r = ctx.mul(pi_r, ctx.pi());
          fact *= r;
        }
        L.expect(th.lambdas[r] == ctx.mul(pi_r, ctx.inv(ctx.from_int(fact))), tag + " lambda_" + std::to_string(r));
      }
      const RElem z = theta_at_one(th, ctx);
      L.expect(ctx.pow(z, p) == ctx.one(), tag + " theta(1)^p != 1");
      L.expect(z != ctx.one(), tag + " theta(1) == 1");
      for (std::uint32_t r = 1; r <= th.degree; ++r) {
        const auto v = ctx.pi_valuation(th.lambdas[r]);
        if (!v) continue;  // zero mod p^N
        // ord(lambda_r) > (p - 1) r / p^2, compared exactly in units of 1/(p-1)
        L.expect(v->pi_units * std::int64_t(p) * p > std::int64_t(r) * (p - 1) * (p - 1),
                 tag + " decay at r=" + std::to_string(r));
      }
    }
  }
}

void criterion2(Ledger& L) {
  for (std::uint32_t p : {2u, 3u}) {
    const FieldSpec field = FieldSpec::prime_field(p);
    for (const char* text : {"x1+x2+1", "x1^2+x2", "x1^3+x2^2+x2"}) {
      const Poly f = parse_poly(text, 2, field);
      for (std::uint32_t k = 1; k <= 2; ++k) {
        const std::uint64_t truth = brute_toric(f, k, field);
        for (std::uint32_t N = 1; N <= 3 * k; ++N) {
          ToricOptions o;
          o.precision = N;
          const ToricResult r = toric(f, k, field, o);
          const PadicCtx ctx = PadicCtx::build(field, N);
          const Residue M = ctx.modulus();
          const Residue qk1 = (powmod(p, k, ctx) + M - 1 % M) % M;
          const Residue lhs = ctx.mulmod(powmod(qk1, 3, ctx), r.trace);
          const Residue rhs = (ctx.mulmod(powmod(p, k, ctx), truth % M) + M - powmod(qk1, 2, ctx)) % M;
          L.expect(lhs == rhs, std::string(text) + " p=" + std::to_string(p) + " k=" + std::to_string(k) +
                                   " N=" + std::to_string(N));
        }
      }
    }
  }
}

void criterion3(Ledger& L) {
  const std::vector<Poly::Exponent> monos{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
  auto check = [&](const Poly& f, const FieldSpec& field) {
    for (std::uint32_t k = 1; k <= 2; ++k) {
      const ToricResult r = toric(f, k, field);
      const std::uint64_t truth = brute_toric(f, k, field);
      L.expect(r.count && *r.count == truth, show(f, field) + " k=" + std::to_string(k));
    }
  };
  const FieldSpec f2 = FieldSpec::prime_field(2);
  std::size_t tested = 0;
  for (std::uint32_t mask = 1; mask < 64; ++mask) {
    std::vector<std::pair<Poly::Exponent, FqElem>> terms;
    for (std::size_t i = 0; i < monos.size(); ++i)
      if (mask >> i & 1) terms.emplace_back(monos[i], f2.one());
    check(poly_from_terms(2, terms, f2), f2);
    ++tested;
  }
  L.expect(tested == 63, "F_2 polynomial count");
  const FieldSpec f3 = FieldSpec::prime_field(3);
  std::mt19937_64 rng(20260101);
  for (int i = 0; i < 50;) {
    std::vector<std::pair<Poly::Exponent, FqElem>> terms;
    for (const auto& e : monos) terms.emplace_back(e, f3.from_int(rng() % 3));
    const Poly f = poly_from_terms(2, terms, f3);
    if (f.is_zero()) continue;
    check(f, f3);
    ++i;
  }
}

void criterion4(Ledger& L) {
  const FieldSpec f4 = FieldSpec::make(2, 2);
  const Poly f = parse_poly("x1+x2+{0,1}", 2, f4);
  for (std::uint32_t k = 1; k <= 2; ++k) {
    const ToricResult r = toric(f, k, f4);
    L.expect(r.count && *r.count == brute_toric(f, k, f4), "F_4 k=" + std::to_string(k));
  }
}

struct Fixture {
  CountSeries counts;
  ZetaFn zeta;
  std::vector<mpz_class> P;  // empty unless a curve
  std::uint64_t q;
};
std::vector<Fixture> g_fixtures;

std::vector<mpz_class> Z(std::initializer_list<long> xs) {
  std::vector<mpz_class> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

void criterion5(Ledger& L) {
  const FieldSpec f2 = FieldSpec::prime_field(2);
  struct C {
    const char* poly;
    std::uint32_t n, D1, D2;
    ZetaFn expected;
  };
  for (const C& c : {C{"x1", 1, 0, 1, {Z({1}), Z({1, -1})}}, C{"x1^2+x1+1", 1, 0, 2, {Z({1}), Z({1, 0, -1})}},
                     C{"x1+x2+1", 2, 1, 1, {Z({1}), Z({1, -2})}}}) {
    std::vector<ToricResult> log;
    CountOptions o;
    o.method = CountMethod::kDwork;
    o.log = &log;
    const CountSeries counts = count_series({parse_poly(c.poly, c.n, f2)}, c.D1 + c.D2, f2, o);
    for (const auto& r : log) g_runs.push_back({c.n, parse_poly(c.poly, c.n, f2).degree(), r});
    L.expect(!log.empty(), std::string(c.poly) + " used no trace-formula runs");
    const ZetaFn z = recover_zeta(counts, c.D1, c.D2);
    L.expect(z == c.expected, std::string(c.poly) + " zeta");
    g_fixtures.push_back({counts, z, {}, 2});
  }
}

void criterion6(Ledger& L) {
  const FieldSpec f2 = FieldSpec::prime_field(2);
  struct C {
    const char* poly;
    long order;
  };
  for (const C& c : {C{"x2^2+x2+x1^3", 3}, C{"x2^2+x2+x1^3+x1", 5}, C{"x2+x1^2", 1}}) {
    const Poly f = parse_poly(c.poly, 2, f2);
    const CountSeries counts = brute_counts(f, 3, f2);
    const ZetaFn z = recover_zeta(counts, 2, 1);
    const JacobianResult j = jacobian_order(z, 2);
    L.expect(j.order == c.order, std::string(c.poly) + " order " + j.order.get_str());
    const ToricResult r = toric(f, 1, f2);
    L.expect(r.count && *r.count == brute_toric(f, 1, f2), std::string(c.poly) + " k=1 toric");
    g_fixtures.push_back({counts, z, j.P, 2});
  }
}

void criterion7(Ledger& L) {
  const FieldSpec f3 = FieldSpec::prime_field(3);
  const Poly f = parse_poly("x2^2-x1^3+x1", 2, f3);
  const ToricResult r = toric(f, 2, f3);
  L.expect(r.count && *r.count == brute_toric(f, 2, f3), "p=3 curve k=2");
  std::printf("  p=3 curve k=2: W=%llu count=%llu\n", static_cast<unsigned long long>(r.W),
              static_cast<unsigned long long>(r.count.value_or(0)));
}

void criterion8(Ledger& L) {
  const ConeCtx cc = ConeCtx::make(2, 3);
  const MonomialIndex ix = MonomialIndex::enumerate(11, cc);
  std::uint64_t loops = 0;
  for (std::uint32_t r0 = 0; r0 <= 11; ++r0)
    for (std::uint32_t r1 = 0; r1 <= 3 * r0; ++r1)
      for (std::uint32_t r2 = 0; r1 + r2 <= 3 * r0; ++r2) ++loops;
  L.expect(ix.size() == 2586 && count_points(11, cc) == 2586 && loops == 2586, "W(2,3,11) != 2586");
  std::uint64_t closed = 0;
  for (std::uint32_t r0 = 0; r0 <= 11; ++r0) closed += binomial(3 * r0 + 2, 2);
  L.expect(closed == ix.size(), "closed-form sum");
  for (const Run& run : g_runs) {
    if (run.d == 0) continue;
    double bound = std::pow(run.d, run.n) * std::pow(run.r.t, run.n + 1) * std::tgamma(run.n + 2) + run.n + 1;
    L.expect(run.r.W <= bound, "Blichfeldt bound at W=" + std::to_string(run.r.W));
  }
  std::printf("  Blichfeldt bound checked on %zu runs\n", g_runs.size());
}

void criterion9(Ledger& L) {
  std::mt19937_64 rng(99);
  for (int i = 0; i < 100; ++i) {
    const std::uint32_t p = i % 3 == 0 ? 3 : 2;
    const std::uint32_t a = 1 + rng() % 4;
    const std::uint32_t k = 1 + rng() % 3;
    const std::uint32_t W = 1 + rng() % 8;
    const std::uint32_t N = 1 + rng() % 4;
    const PadicCtx ctx = PadicCtx::build(FieldSpec::make(p, a), N);
    SemiMatrix A(W, ctx.dim());
    for (std::size_t u = 0; u < W; ++u) {
      for (std::size_t v = 0; v < W; ++v) {
        RElem x = ctx.zero();
        for (auto& c : x.c) c = rng() % ctx.modulus();
        A.set(u, v, x);
      }
    }
    const auto fast = testing::to_dense(semilinear_power(A, a, k, ctx), ctx);
    const auto slow = testing::naive_semilinear(testing::to_dense(A, ctx), k, ctx);
    L.expect(fast == slow, "instance " + std::to_string(i));
  }
}

void criterion10(Ledger& L) {
  for (const Fixture& fx : g_fixtures) {
    const auto zs = zeta_series(fx.counts);
    const std::string tag = "fixture N_1=" + std::to_string(fx.counts.counts[0]);
    L.expect(expand(fx.zeta, zs.size()) == zs, tag + " expansion");
    const auto back = counts_from_zeta(fx.zeta, fx.counts.counts.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
      L.expect(back[i] == mpz_class(std::to_string(fx.counts.counts[i])), tag + " log-derivative");
    }
    L.expect(zs[0] == 1, tag + " z_0");
    for (const auto& x : zs) L.expect(x >= 0, tag + " negative z_m");
    if (!fx.P.empty()) L.expect(weil_shape(fx.P, fx.q), tag + " Weil shape");
  }
  L.expect(g_fixtures.size() == 6, "fixture count");
}

}  // namespace

int main(int argc, char** argv) {
  const bool large = argc > 1 && std::string(argv[1]) == "--large";
  const std::vector<std::pair<const char*, std::function<void(Ledger&)>>> criteria{
      {"splitting function coefficients, theta(1), decay", criterion1},
      {"trace formula congruence for every N", criterion2},
      {"toric_count equals brute_toric on degree <= 2 polynomials", criterion3},
      {"toric_count over F_4", criterion4},
      {"zeta fixtures from trace-formula counts", criterion5},
      {"Jacobian fixtures", criterion6},
      {"large p = 3 curve (label large)", criterion7},
      {"matrix size formula and Blichfeldt bound", criterion8},
      {"semilinear power against the naive product", criterion9},
      {"round trip and Weil shape", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i + 1);
    if (id == 7 && !large) {
      std::printf("SKIP %d: %s (pass --large)\n", id, criteria[i].first);
      continue;
    }
    Ledger L;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(L);
    } catch (const std::exception& e) {
      L.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > kBudget[id]) {
      std::ostringstream s;
      s << "took " << secs << " s, budget " << kBudget[id] << " s";
      L.failures.push_back(s.str());
    }
    const bool ok = L.failures.empty();
    failed += !ok;
    std::printf("%s %d: %s (%.2f s)\n", ok ? "PASS" : "FAIL", id, criteria[i].first, secs);
    for (std::size_t j = 0; j < L.failures.size() && j < 10; ++j) std::printf("  %s\n", L.failures[j].c_str());
    std::fflush(stdout);
  }
  return failed ? 1 : 0;
}
