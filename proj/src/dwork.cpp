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

#include "dwz/dwork.hpp"

#include <algorithm>
#include <chrono>
#include <string>

#include "dwz/errors.hpp"

namespace dwz {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool all_zero(const Residue* x, std::uint32_t dim) {
  for (std::uint32_t k = 0; k < dim; ++k) {
    if (x[k] != 0) return false;
  }
  return true;
}

std::uint32_t inverse_power(std::uint64_t r, std::uint32_t a) {
  return static_cast<std::uint32_t>((a - r % a) % a);
}

}  // namespace

RElem FSeries::at(std::span<const std::uint32_t> r, const PadicCtx& ctx) const {
  RElem out = ctx.zero();
  if (auto pos = index->position(r)) std::copy(coeff(*pos), coeff(*pos) + dim, out.c.begin());
  return out;
}

SemiMatrix::SemiMatrix(std::size_t W, std::uint32_t dim) : dim_(dim), weights_(W, 0) { layout(); }

SemiMatrix::SemiMatrix(std::vector<std::uint32_t> weights, std::uint32_t budget, std::uint32_t dim)
    : dim_(dim), weights_(std::move(weights)), budget_(budget) {
  layout();
}

void SemiMatrix::layout() {
  const std::size_t W = weights_.size();
  row_len_.resize(W);
  row_off_.resize(W);
  std::size_t off = 0;
  for (std::size_t u = 0; u < W; ++u) {
    std::size_t len = W;
    if (budget_) len = weights_[u] > *budget_ ? 0 : prefix(static_cast<std::int64_t>(*budget_) - weights_[u]);
    row_len_[u] = len;
    row_off_[u] = off;
    off += len * dim_;
  }
  data_.assign(off, 0);
}

std::size_t SemiMatrix::prefix(std::int64_t w) const noexcept {
  if (!budget_) return weights_.size();
  if (w < 0) return 0;
  return static_cast<std::size_t>(
      std::upper_bound(weights_.begin(), weights_.end(), static_cast<std::uint64_t>(w),
                       [](std::uint64_t x, std::uint32_t y) { return x < y; }) -
      weights_.begin());
}

RElem SemiMatrix::get(std::size_t u, std::size_t v, const PadicCtx& ctx) const {
  if (u >= size() || v >= size()) throw Error(ErrorKind::kIndexOutOfRange, "matrix index out of range");
  RElem out = ctx.zero();
  if (const Residue* e = entry(u, v)) std::copy(e, e + dim_, out.c.begin());
  return out;
}

void SemiMatrix::set(std::size_t u, std::size_t v, const RElem& x) {
  if (u >= size() || v >= row_len_[u]) throw Error(ErrorKind::kIndexOutOfRange, "entry outside matrix storage");
  if (x.c.size() != dim_) throw Error(ErrorKind::kCtxMismatch, "ring element has wrong dimension");
  std::copy(x.c.begin(), x.c.end(), row(u) + v * dim_);
}

FSeries compute_F(const Poly& f, const ThetaTable& theta, const PadicCtx& ctx, const ConeCtx& cc) {
  if (f.is_zero()) throw Error(ErrorKind::kInvalidArgument, "F needs a nonzero polynomial");
  if (f.n != cc.n) throw Error(ErrorKind::kInvalidArgument, "polynomial and cone disagree on n");
  if (f.degree() > cc.d) throw Error(ErrorKind::kInvalidArgument, "polynomial degree exceeds cone degree");
  const std::uint32_t D = ctx.dim();
  const std::uint32_t tt = theta.degree;

  FSeries F;
  F.index = std::make_shared<const MonomialIndex>(MonomialIndex::enumerate(tt, cc));
  F.dim = D;
  const MonomialIndex& ix = *F.index;
  F.data.assign(ix.size() * D, 0);
  F.data[0] = 1 % ctx.modulus();

  const std::uint32_t n = cc.n;
  std::vector<std::uint32_t> y(n + 1);
  std::vector<Residue> prod(D);
  for (const auto& [e, c] : f.terms) {
    // factor theta(a_j X^j) with j = (1, e): coefficient lambda_r a_j^r at r j
    const RElem aj = ctx.teichmuller(c);
    std::vector<RElem> pw(tt + 1);
    RElem apow = ctx.one();
    for (std::uint32_t r = 0; r <= tt; ++r) {
      pw[r] = ctx.mul(theta.lambdas[r], apow);
      apow = ctx.mul(apow, aj);
    }
    for (std::size_t xi = ix.size(); xi-- > 0;) {
      const auto x = ix.point(xi);
      Residue* fx = F.data.data() + xi * D;
      for (std::uint32_t r = 1; r <= x[0]; ++r) {
        bool negative = false;
        y[0] = x[0] - r;
        for (std::uint32_t i = 0; i < n; ++i) {
          const std::int64_t yi = static_cast<std::int64_t>(x[i + 1]) - static_cast<std::int64_t>(r) * e[i];
          if (yi < 0) {
            negative = true;
            break;
          }
          y[i + 1] = static_cast<std::uint32_t>(yi);
        }
        if (negative) break;
        const auto pos = ix.position(y);
        if (!pos) continue;
        const Residue* fy = F.data.data() + *pos * D;
        if (all_zero(fy, D)) continue;
        ctx.mul_raw(fy, pw[r].c.data(), prod.data());
        for (std::uint32_t k = 0; k < D; ++k) {
          const Residue s = fx[k] + prod[k];
          fx[k] = s >= ctx.modulus() ? s - ctx.modulus() : s;
        }
      }
    }
  }
  return F;
}

std::uint32_t matrix_weight_bound(std::uint32_t p, std::uint32_t N) {
  const std::uint64_t num = static_cast<std::uint64_t>(p) * p * N;
  const std::uint64_t den = static_cast<std::uint64_t>(p - 1) * (p - 1);
  return static_cast<std::uint32_t>((num + den - 1) / den - 1);
}

SemiMatrix build_A(const FSeries& F, std::uint32_t t, const PadicCtx& ctx, bool pruned, std::uint64_t size_cap) {
  const ConeCtx cc = F.index->cone();
  const MonomialIndex ix = MonomialIndex::enumerate(t, cc, size_cap);
  const std::size_t W = ix.size();
  const std::uint32_t D = ctx.dim();
  const std::uint32_t p = ctx.p();
  const std::uint32_t twist = ctx.a() - 1;

  std::vector<std::uint32_t> weights(W);
  for (std::size_t u = 0; u < W; ++u) weights[u] = ix.weight_of(u);
  SemiMatrix A = pruned ? SemiMatrix(std::move(weights), t, D) : SemiMatrix(W, D);

  const std::uint32_t n = cc.n;
  std::vector<std::int64_t> r(n + 1);
  for (std::size_t u = 0; u < W; ++u) {
    const auto pu = ix.point(u);
    Residue* row = A.row(u);
    for (std::size_t v = 0; v < A.row_len(u); ++v) {
      const auto pv = ix.point(v);
      bool negative = false;
      for (std::uint32_t i = 0; i <= n; ++i) {
        r[i] = static_cast<std::int64_t>(p) * pu[i] - pv[i];
        if (r[i] < 0) {
          negative = true;
          break;
        }
      }
      if (negative) continue;
      const auto pos = F.index->position_signed(r);
      if (!pos) continue;
      ctx.tau_raw(twist, F.coeff(*pos), row + v * D);
    }
  }
  return A;
}

SemiMatrix tau_apply(const SemiMatrix& X, std::uint32_t i, const PadicCtx& ctx) {
  SemiMatrix out = X;
  if (i == 0) return out;
  const std::uint32_t D = ctx.dim();
  for (std::size_t u = 0; u < X.size(); ++u) {
    for (std::size_t v = 0; v < X.row_len(u); ++v) ctx.tau_raw(i, X.row(u) + v * D, out.row(u) + v * D);
  }
  return out;
}

namespace {

template <bool kSmall>
void accumulate(const Residue* M, const Residue* yrow, std::size_t vmax, std::uint32_t D, unsigned __int128* acc,
                const PadicCtx& ctx) {
  for (std::size_t v = 0; v < vmax; ++v) {
    const Residue* yv = yrow + v * D;
    unsigned __int128* av = acc + v * D;
    for (std::uint32_t c = 0; c < D; ++c) {
      const Residue yc = yv[c];
      if (yc == 0) continue;
      for (std::uint32_t r = 0; r < D; ++r) {
        if constexpr (kSmall) {
          av[r] += M[r * D + c] * yc;
        } else {
          av[r] += ctx.mulmod(M[r * D + c], yc);
        }
      }
    }
  }
}

}  // namespace

SemiMatrix twisted_mul(const SemiMatrix& X, const SemiMatrix& Y, std::uint32_t i, const PadicCtx& ctx) {
  const std::size_t W = X.size();
  const std::uint32_t D = ctx.dim();
  if (Y.size() != W || X.dim() != D || Y.dim() != D) {
    throw Error(ErrorKind::kInvalidArgument, "matrix shapes disagree");
  }
  const std::uint32_t a = ctx.a();
  i %= a;
  const std::uint32_t undo = (a - i) % a;
  SemiMatrix C = X.pruned() ? SemiMatrix(std::vector<std::uint32_t>(X.weights().begin(), X.weights().end()),
                                         *X.budget(), D)
                            : SemiMatrix(W, D);

  std::vector<std::size_t> y_end(W, 0);
  for (std::size_t x = 0; x < W; ++x) {
    for (std::size_t v = Y.row_len(x); v-- > 0;) {
      if (!all_zero(Y.row(x) + v * D, D)) {
        y_end[x] = v + 1;
        break;
      }
    }
  }

  const bool small = ctx.modulus() <= (Residue{1} << 32);
  std::vector<unsigned __int128> acc;
  std::vector<Residue> s(D), M(static_cast<std::size_t>(D) * D), tmp(D);
  for (std::size_t u = 0; u < W; ++u) {
    const std::size_t len_c = C.row_len(u);
    if (len_c == 0) continue;
    acc.assign(len_c * D, 0);
    for (std::size_t x = 0; x < X.row_len(u); ++x) {
      const Residue* sx = X.row(u) + x * D;
      if (all_zero(sx, D)) continue;
      std::size_t vmax = std::min({len_c, Y.row_len(x), y_end[x]});
      if (X.pruned()) {
        const std::int64_t room = static_cast<std::int64_t>(*X.budget()) - X.weights()[u] - X.weights()[x];
        vmax = std::min(vmax, C.prefix(room));
      }
      if (vmax == 0) continue;
      // X tau^i(Y) = tau^i(tau^{-i}(X) Y)
      ctx.tau_raw(undo, sx, s.data());
      ctx.mul_matrix_raw(s.data(), M.data());
      if (small) {
        accumulate<true>(M.data(), Y.row(x), vmax, D, acc.data(), ctx);
      } else {
        accumulate<false>(M.data(), Y.row(x), vmax, D, acc.data(), ctx);
      }
    }
    Residue* out = C.row(u);
    for (std::size_t v = 0; v < len_c; ++v) {
      for (std::uint32_t r = 0; r < D; ++r) tmp[r] = static_cast<Residue>(acc[v * D + r] % ctx.modulus());
      ctx.tau_raw(i, tmp.data(), out + v * D);
    }
  }
  return C;
}

namespace {

struct SemiPair {
  std::uint32_t r;  // number of factors mod a
  SemiMatrix M;
};

SemiPair combine(const SemiPair& x, const SemiPair& y, const PadicCtx& ctx) {
  return {(x.r + y.r) % ctx.a(), twisted_mul(x.M, y.M, inverse_power(x.r, ctx.a()), ctx)};
}

SemiMatrix plain_power(SemiMatrix base, std::uint64_t k, const PadicCtx& ctx) {
  std::optional<SemiMatrix> result;
  while (k != 0) {
    if (k & 1) result = result ? twisted_mul(*result, base, 0, ctx) : base;
    k >>= 1;
    if (k != 0) base = twisted_mul(base, base, 0, ctx);
  }
  return std::move(*result);
}

}  // namespace

SemiMatrix semilinear_prefix(const SemiMatrix& A, std::uint64_t m, const PadicCtx& ctx) {
  if (m == 0) throw Error(ErrorKind::kInvalidArgument, "product needs at least one factor");
  std::optional<SemiPair> result;
  SemiPair base{1 % ctx.a(), A};
  while (m != 0) {
    if (m & 1) result = result ? combine(*result, base, ctx) : base;
    m >>= 1;
    if (m != 0) base = combine(base, base, ctx);
  }
  return std::move(result->M);
}

SemiMatrix semilinear_power(const SemiMatrix& A, std::uint32_t a, std::uint64_t k, const PadicCtx& ctx) {
  if (a != ctx.a()) throw Error(ErrorKind::kInvalidArgument, "a disagrees with the ring context");
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "k must be >= 1");
  return plain_power(semilinear_prefix(A, a, ctx), k, ctx);
}

RElem trace(const SemiMatrix& B, const PadicCtx& ctx) {
  RElem acc = ctx.zero();
  for (std::size_t u = 0; u < B.size(); ++u) {
    if (const Residue* e = B.entry(u, u)) {
      for (std::uint32_t r = 0; r < ctx.dim(); ++r) {
        const Residue s = acc.c[r] + e[r];
        acc.c[r] = s >= ctx.modulus() ? s - ctx.modulus() : s;
      }
    }
  }
  return acc;
}

RElem frobenius_trace(const SemiMatrix& A, const FSeries& F, std::uint32_t t, std::uint64_t k,
                      const PadicCtx& ctx) {
  const std::uint32_t a = ctx.a();
  if (!A.pruned()) return trace(semilinear_power(A, a, k, ctx), ctx);

  const std::uint32_t D = ctx.dim();
  const std::uint64_t m = static_cast<std::uint64_t>(a) * k;
  RElem acc = ctx.zero();
  std::vector<Residue> prod(D), tw(D);
  auto add_into = [&](const Residue* x) {
    for (std::uint32_t r = 0; r < D; ++r) {
      const Residue s = acc.c[r] + x[r];
      acc.c[r] = s >= ctx.modulus() ? s - ctx.modulus() : s;
    }
  };

  if (m == 1) {
    // diagonal A_uu = F_{(p-1)u}; staircase storage omits it when 2 w(u) > t
    const MonomialIndex& ix = *F.index;
    const std::uint32_t n = ix.cone().n;
    std::vector<std::uint32_t> r(n + 1);
    for (std::size_t u = 0; u < ix.size() && ix.weight_of(u) <= t; ++u) {
      const auto pu = ix.point(u);
      for (std::uint32_t i = 0; i <= n; ++i) r[i] = (ctx.p() - 1) * pu[i];
      if (auto pos = ix.position(r)) {
        ctx.tau_raw(a - 1, F.coeff(*pos), tw.data());
        add_into(tw.data());
      }
    }
    return acc;
  }

  const std::uint64_t h = m / 2;
  const SemiMatrix P = semilinear_prefix(A, h, ctx);
  const std::uint32_t twist = inverse_power(h, a);
  const SemiMatrix Q = (m % 2 == 0) ? P : twisted_mul(P, A, twist, ctx);
  for (std::size_t u = 0; u < P.size(); ++u) {
    for (std::size_t v = 0; v < P.row_len(u); ++v) {
      const Residue* puv = P.row(u) + v * D;
      if (all_zero(puv, D)) continue;
      const Residue* qvu = Q.entry(v, u);
      if (qvu == nullptr || all_zero(qvu, D)) continue;
      ctx.tau_raw(twist, qvu, tw.data());
      ctx.mul_raw(puv, tw.data(), prod.data());
      add_into(prod.data());
    }
  }
  return acc;
}

ToricResult toric_count(const Poly& f, std::uint32_t k, const FieldSpec& field, const ToricOptions& opts) {
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "k must be >= 1");
  if (f.n == 0) throw Error(ErrorKind::kInvalidArgument, "polynomial needs at least one variable");
  if (f.is_zero()) throw Error(ErrorKind::kInvalidArgument, "toric count of the zero polynomial");
  const std::uint32_t n = f.n;
  const std::uint32_t a = field.a();
  const std::uint32_t p = field.p();

  ToricResult res;
  res.d = f.degree();
  const std::uint64_t default_N = static_cast<std::uint64_t>(n + 1) * a * k;
  if (default_N > UINT32_MAX) throw Error(ErrorKind::kSizeCapExceeded, "precision (n+1)ak too large");
  res.N = opts.precision.value_or(static_cast<std::uint32_t>(default_N));
  if (res.N == 0) throw Error(ErrorKind::kInvalidArgument, "precision N must be >= 1");
  if (res.d == 0) {
    // nonzero constant
    res.exact = true;
    res.count = 0;
    return res;
  }

  const PadicCtx ctx = PadicCtx::build(field, res.N);
  const ConeCtx cc = ConeCtx::make(n, res.d);
  res.t = opts.weight_bound.value_or(matrix_weight_bound(p, res.N));
  res.t_tilde = theta_degree(p, res.N);
  res.W = count_points(res.t, cc);
  res.W_tilde = count_points(res.t_tilde, cc);
  if (res.W > opts.size_cap) {
    throw Error(ErrorKind::kSizeCapExceeded,
                "W = " + std::to_string(res.W) + " exceeds size cap " + std::to_string(opts.size_cap));
  }
  constexpr std::uint64_t kMaxSeriesResidues = std::uint64_t{1} << 27;
  if (res.W_tilde > kMaxSeriesResidues / ctx.dim()) {
    throw Error(ErrorKind::kSizeCapExceeded, "W~ = " + std::to_string(res.W_tilde) + " is too large for F");
  }

  auto start = Clock::now();
  const ThetaTable theta = compute_theta(ctx, res.t_tilde);
  res.times.theta = seconds_since(start);

  start = Clock::now();
  const FSeries F = compute_F(f, theta, ctx, cc);
  res.times.F = seconds_since(start);

  start = Clock::now();
  const SemiMatrix A = build_A(F, res.t, ctx, opts.pruned, opts.size_cap);
  res.times.matrix = seconds_since(start);

  start = Clock::now();
  const RElem tr = frobenius_trace(A, F, res.t, k, ctx);
  res.times.power = seconds_since(start);

  if (!ctx.is_rational_integer(tr)) {
    throw Error(ErrorKind::kNonIntegerTrace, "trace has nonzero pi or mu components");
  }
  res.trace = tr.c[0];

  const Residue one = 1 % ctx.modulus();
  Residue qk = one;
  const Residue q_mod = static_cast<Residue>(field.q() % ctx.modulus());
  for (std::uint32_t i = 0; i < k; ++i) qk = ctx.mulmod(qk, q_mod);
  const Residue qk1 = (qk + ctx.modulus() - one) % ctx.modulus();
  Residue pow_n = one;
  for (std::uint32_t i = 0; i < n; ++i) pow_n = ctx.mulmod(pow_n, qk1);
  const Residue pow_n1 = ctx.mulmod(pow_n, qk1);
  res.bracket = (ctx.mulmod(pow_n1, res.trace) + pow_n) % ctx.modulus();

  if (res.N >= default_N) {
    // here q^k (q^k - 1)^n < p^N, so the bracket is exactly q^k N_k*
    const Residue qk_exact = checked_pow(field.q(), k, PadicCtx::kMaxModulus);
    if (res.bracket % qk_exact != 0) {
      throw Error(ErrorKind::kInexactDivision,
                  "bracket " + std::to_string(res.bracket) + " not divisible by q^k = " + std::to_string(qk_exact));
    }
    res.count = res.bracket / qk_exact;
    res.exact = true;
  }
  return res;
}

}  // namespace dwz
