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

#include "dwz/padic.hpp"

#include <atomic>
#include <bit>
#include <string>

#include "dwz/errors.hpp"

namespace dwz {

namespace {

std::atomic<std::uint64_t> next_ctx_id{1};

}  // namespace

std::uint32_t vp(Residue v, std::uint32_t p) noexcept {
  if (v == 0) return UINT32_MAX;
  std::uint32_t e = 0;
  while (v % p == 0) {
    v /= p;
    ++e;
  }
  return e;
}

Residue checked_pow(std::uint64_t p, std::uint64_t e, Residue limit) {
  Residue out = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    if (out > limit / p) return 0;
    out *= p;
  }
  return out > limit ? 0 : out;
}

PadicCtx PadicCtx::build(const FieldSpec& field, std::uint32_t precision) {
  if (precision == 0) throw Error(ErrorKind::kInvalidArgument, "precision N must be >= 1");
  PadicCtx ctx(field, precision);
  const std::uint32_t p = field.p();
  const std::uint32_t a = field.a();
  ctx.mod_ = checked_pow(p, precision, kMaxModulus);
  if (ctx.mod_ == 0) {
    throw Error(ErrorKind::kSizeCapExceeded,
                "p^N = " + std::to_string(p) + "^" + std::to_string(precision) + " exceeds 2^62");
  }
  ctx.dim_ = (p - 1) * a;
  ctx.id_ = next_ctx_id.fetch_add(1);

  for (std::uint32_t c : field.modulus()) {
    const std::int64_t v = c;
    ctx.h_lift_.push_back(2 * v >= static_cast<std::int64_t>(p) + 1 ? v - p : v);
  }
  ctx.mu_power_a_.resize(a);
  for (std::uint32_t i = 0; i < a; ++i) ctx.mu_power_a_[i] = ctx.reduce(-ctx.h_lift_[i]);

  // tau(mu): root of h_lift congruent to mu^p, by Newton iteration from mu^p.
  auto eval_h = [&](const RElem& g, bool derivative) {
    RElem acc = ctx.zero();
    for (std::size_t k = ctx.h_lift_.size(); k-- > 0;) {
      if (derivative && k == 0) break;
      const std::int64_t coeff = derivative ? ctx.h_lift_[k] * static_cast<std::int64_t>(k) : ctx.h_lift_[k];
      acc = ctx.add(ctx.mul(acc, g), ctx.from_int(coeff));
    }
    return acc;
  };
  RElem g = ctx.pow(ctx.mu(), p);
  // h'(mu^p) is a unit since h is separable
  RElem s = ctx.lift(field.inv(ctx.reduce_mod_pi(eval_h(g, true))));
  const RElem two = ctx.from_int(2);
  for (std::uint32_t step = 0; step < ctx.newton_steps(); ++step) {
    g = ctx.sub(g, ctx.mul(eval_h(g, false), s));
    s = ctx.sub(ctx.mul(two, s), ctx.mul(eval_h(g, true), ctx.mul(s, s)));
  }

  std::vector<Residue> base(static_cast<std::size_t>(a) * a, 0);
  RElem col = ctx.one();
  for (std::uint32_t j = 0; j < a; ++j) {
    for (std::uint32_t r = 0; r < a; ++r) base[r * a + j] = col.c[r];
    col = ctx.mul(col, g);
  }
  std::vector<Residue> cur(static_cast<std::size_t>(a) * a, 0);
  for (std::uint32_t r = 0; r < a; ++r) cur[r * a + r] = 1 % ctx.mod_;
  for (std::uint32_t i = 0; i < a; ++i) {
    ctx.tau_.push_back(cur);
    std::vector<Residue> next(static_cast<std::size_t>(a) * a, 0);
    for (std::uint32_t r = 0; r < a; ++r) {
      for (std::uint32_t c = 0; c < a; ++c) {
        unsigned __int128 acc = 0;
        for (std::uint32_t k = 0; k < a; ++k) {
          acc += static_cast<unsigned __int128>(base[r * a + k]) * cur[k * a + c] % ctx.mod_;
        }
        next[r * a + c] = static_cast<Residue>(acc % ctx.mod_);
      }
    }
    cur = std::move(next);
  }
  return ctx;
}

std::uint32_t PadicCtx::newton_steps() const {
  const std::uint64_t l = static_cast<std::uint64_t>(p() - 1) * N_;
  return l <= 1 ? 0 : static_cast<std::uint32_t>(std::bit_width(l - 1));
}

std::span<const Residue> PadicCtx::tau_table(std::uint32_t i) const {
  if (i >= a()) throw Error(ErrorKind::kIndexOutOfRange, "tau power " + std::to_string(i) + " outside [0, a)");
  return tau_[i];
}

Residue PadicCtx::reduce(std::int64_t v) const noexcept {
  const auto m = static_cast<std::int64_t>(mod_);
  std::int64_t r = v % m;
  if (r < 0) r += m;
  return static_cast<Residue>(r);
}

void PadicCtx::check(const RElem& x) const {
  if (x.ctx_id != id_ || x.c.size() != dim_) {
    throw Error(ErrorKind::kCtxMismatch, "ring element belongs to a different context");
  }
}

RElem PadicCtx::make() const { return RElem{std::vector<Residue>(dim_, 0), id_}; }

RElem PadicCtx::zero() const { return make(); }

RElem PadicCtx::one() const { return from_int(1); }

RElem PadicCtx::from_int(std::int64_t v) const {
  RElem out = make();
  out.c[0] = reduce(v);
  return out;
}

RElem PadicCtx::pi() const {
  if (p() == 2) return from_int(-2);
  return basis(1, 0);
}

RElem PadicCtx::mu() const {
  if (a() == 1) return from_int(-h_lift_[0]);
  return basis(0, 1);
}

RElem PadicCtx::basis(std::uint32_t j, std::uint32_t i, Residue value) const {
  if (j + 1 >= p() || i >= a()) throw Error(ErrorKind::kIndexOutOfRange, "basis index out of range");
  RElem out = make();
  out.c[j * a() + i] = value % mod_;
  return out;
}

RElem PadicCtx::lift(const FqElem& x) const {
  if (x.coeffs.size() != a()) throw Error(ErrorKind::kCtxMismatch, "field element has wrong degree");
  RElem out = make();
  for (std::uint32_t i = 0; i < a(); ++i) out.c[i] = x.coeffs[i] % mod_;
  return out;
}

FqElem PadicCtx::reduce_mod_pi(const RElem& x) const {
  check(x);
  FqElem out = field_.zero();
  for (std::uint32_t i = 0; i < a(); ++i) out.coeffs[i] = static_cast<std::uint32_t>(x.c[i] % p());
  return out;
}

RElem PadicCtx::add(const RElem& x, const RElem& y) const {
  check(x);
  check(y);
  RElem out = make();
  for (std::uint32_t k = 0; k < dim_; ++k) {
    const Residue s = x.c[k] + y.c[k];
    out.c[k] = s >= mod_ ? s - mod_ : s;
  }
  return out;
}

RElem PadicCtx::sub(const RElem& x, const RElem& y) const {
  check(x);
  check(y);
  RElem out = make();
  for (std::uint32_t k = 0; k < dim_; ++k) out.c[k] = x.c[k] >= y.c[k] ? x.c[k] - y.c[k] : x.c[k] + mod_ - y.c[k];
  return out;
}

RElem PadicCtx::neg(const RElem& x) const { return sub(zero(), x); }

void PadicCtx::r0_mul(const Residue* x, const Residue* y, unsigned __int128* acc) const {
  // acc has length a and receives x * y reduced modulo h_lift (not mod p^N).
  const std::uint32_t a = this->a();
  std::vector<Residue> wide(2 * a - 1, 0);
  for (std::uint32_t i = 0; i < a; ++i) {
    if (x[i] == 0) continue;
    for (std::uint32_t j = 0; j < a; ++j) {
      const Residue t = mulmod(x[i], y[j]);
      const Residue s = wide[i + j] + t;
      wide[i + j] = s >= mod_ ? s - mod_ : s;
    }
  }
  for (std::size_t k = wide.size(); k-- > a;) {
    const Residue c = wide[k];
    if (c == 0) continue;
    for (std::uint32_t i = 0; i < a; ++i) {
      const Residue s = wide[k - a + i] + mulmod(c, mu_power_a_[i]);
      wide[k - a + i] = s >= mod_ ? s - mod_ : s;
    }
  }
  for (std::uint32_t i = 0; i < a; ++i) acc[i] += wide[i];
}

void PadicCtx::mul_raw(const Residue* x, const Residue* y, Residue* out) const {
  const std::uint32_t a = this->a();
  const std::uint32_t levels = p() - 1;
  std::vector<unsigned __int128> tmp(static_cast<std::size_t>(2 * levels - 1) * a, 0);
  for (std::uint32_t j1 = 0; j1 < levels; ++j1) {
    bool nonzero = false;
    for (std::uint32_t i = 0; i < a; ++i) nonzero |= x[j1 * a + i] != 0;
    if (!nonzero) continue;
    for (std::uint32_t j2 = 0; j2 < levels; ++j2) r0_mul(x + j1 * a, y + j2 * a, tmp.data() + (j1 + j2) * a);
  }
  // pi^{p-1} = -p
  const Residue minus_p = reduce(-static_cast<std::int64_t>(p()));
  for (std::uint32_t lvl = 2 * levels - 1; lvl-- > levels;) {
    for (std::uint32_t i = 0; i < a; ++i) {
      const Residue c = static_cast<Residue>(tmp[lvl * a + i] % mod_);
      tmp[(lvl - levels) * a + i] += mulmod(c, minus_p);
    }
  }
  for (std::uint32_t k = 0; k < dim_; ++k) out[k] = static_cast<Residue>(tmp[k] % mod_);
}

void PadicCtx::tau_raw(std::uint32_t i, const Residue* x, Residue* out) const {
  const std::uint32_t a = this->a();
  if (i == 0) {
    std::copy(x, x + dim_, out);
    return;
  }
  const Residue* t = tau_[i].data();
  for (std::uint32_t j = 0; j + 1 < p(); ++j) {
    for (std::uint32_t r = 0; r < a; ++r) {
      unsigned __int128 acc = 0;
      for (std::uint32_t c = 0; c < a; ++c) acc += mulmod(t[r * a + c], x[j * a + c]);
      out[j * a + r] = static_cast<Residue>(acc % mod_);
    }
  }
}

void PadicCtx::mul_matrix_raw(const Residue* s, Residue* out) const {
  std::vector<Residue> e(dim_, 0), col(dim_, 0);
  for (std::uint32_t k = 0; k < dim_; ++k) {
    e[k] = 1 % mod_;
    mul_raw(s, e.data(), col.data());
    e[k] = 0;
    for (std::uint32_t r = 0; r < dim_; ++r) out[r * dim_ + k] = col[r];
  }
}

RElem PadicCtx::mul(const RElem& x, const RElem& y) const {
  check(x);
  check(y);
  RElem out = make();
  mul_raw(x.c.data(), y.c.data(), out.c.data());
  return out;
}

RElem PadicCtx::pow(RElem x, std::uint64_t e) const {
  check(x);
  RElem out = one();
  while (e != 0) {
    if (e & 1) out = mul(out, x);
    e >>= 1;
    if (e != 0) x = mul(x, x);
  }
  return out;
}

RElem PadicCtx::inv(const RElem& x) const {
  const FqElem residue = reduce_mod_pi(x);
  if (field_.is_zero(residue)) throw Error(ErrorKind::kNotAUnit, "element vanishes modulo pi");
  RElem s = lift(field_.inv(residue));
  const RElem two = from_int(2);
  for (std::uint32_t step = 0; step < newton_steps(); ++step) {
    s = sub(mul(two, s), mul(x, mul(s, s)));
  }
  return s;
}

RElem PadicCtx::teichmuller(const FqElem& x) const {
  if (field_.is_zero(x)) return zero();
  const std::uint64_t q = field_.q();
  // phi(Y) = Y^{q-1} - 1, phi'(Y) = (q-1) Y^{q-2}
  const RElem q_minus_1 = from_int(static_cast<std::int64_t>((q - 1) % mod_));
  RElem g = lift(x);
  const FqElem dphi0 = field_.mul(field_.from_int(static_cast<std::int64_t>((q - 1) % field_.p())),
                                  field_.pow(x, q - 2));
  RElem s = lift(field_.inv(dphi0));
  const RElem one_r = one();
  const RElem two = from_int(2);
  for (std::uint32_t step = 0; step < newton_steps(); ++step) {
    g = sub(g, mul(sub(pow(g, q - 1), one_r), s));
    const RElem dphi = mul(q_minus_1, pow(g, q - 2));
    s = sub(mul(two, s), mul(dphi, mul(s, s)));
  }
  return g;
}

RElem PadicCtx::tau_pow(std::uint32_t i, const RElem& x) const {
  check(x);
  if (i >= a()) throw Error(ErrorKind::kIndexOutOfRange, "tau power " + std::to_string(i) + " outside [0, a)");
  RElem out = make();
  tau_raw(i, x.c.data(), out.c.data());
  return out;
}

std::optional<Ord> PadicCtx::pi_valuation(const RElem& x) const {
  check(x);
  std::optional<std::int64_t> best;
  for (std::uint32_t j = 0; j + 1 < p(); ++j) {
    for (std::uint32_t i = 0; i < a(); ++i) {
      const Residue c = x.c[j * a() + i];
      if (c == 0) continue;
      const std::int64_t units = static_cast<std::int64_t>(vp(c, p())) * (p() - 1) + j;
      if (!best || units < *best) best = units;
    }
  }
  if (!best) return std::nullopt;
  return Ord{*best, p() - 1};
}

bool PadicCtx::is_zero(const RElem& x) const {
  check(x);
  for (Residue c : x.c) {
    if (c != 0) return false;
  }
  return true;
}

bool PadicCtx::is_rational_integer(const RElem& x) const {
  check(x);
  for (std::uint32_t k = 1; k < dim_; ++k) {
    if (x.c[k] != 0) return false;
  }
  return true;
}

}  // namespace dwz
