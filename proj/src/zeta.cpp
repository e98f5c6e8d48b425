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

#include "dwz/zeta.hpp"

#include <bit>
#include <optional>
#include <string>

#include "dwz/errors.hpp"

namespace dwz {

namespace {

using u128 = unsigned __int128;

u128 checked_mul(u128 x, u128 y) {
  if (x != 0 && y > (static_cast<u128>(UINT64_MAX)) / x) {
    throw Error(ErrorKind::kCapExceeded, "point count does not fit in 64 bits");
  }
  return x * y;
}

u128 ipow(u128 base, std::uint64_t e) {
  u128 out = 1;
  for (std::uint64_t i = 0; i < e; ++i) out = checked_mul(out, base);
  return out;
}

// Polynomials over Q, low-to-high, no trailing zeros.
using QPoly = std::vector<mpq_class>;

void qtrim(QPoly& x) {
  while (!x.empty() && x.back() == 0) x.pop_back();
}

std::size_t qdeg(const QPoly& x) { return x.empty() ? 0 : x.size() - 1; }

std::pair<QPoly, QPoly> qdivmod(QPoly x, const QPoly& m) {
  qtrim(x);
  QPoly quo;
  if (x.size() >= m.size()) quo.assign(x.size() - m.size() + 1, 0);
  while (!x.empty() && x.size() >= m.size()) {
    const std::size_t shift = x.size() - m.size();
    const mpq_class c = x.back() / m.back();
    quo[shift] = c;
    for (std::size_t i = 0; i < m.size(); ++i) x[shift + i] -= c * m[i];
    x.pop_back();
    qtrim(x);
  }
  qtrim(quo);
  return {quo, x};
}

QPoly qmul(const QPoly& x, const QPoly& y) {
  if (x.empty() || y.empty()) return {};
  QPoly out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] += x[i] * y[j];
  }
  qtrim(out);
  return out;
}

QPoly qgcd(QPoly x, QPoly y) {
  qtrim(x);
  qtrim(y);
  while (!y.empty()) {
    QPoly r = qdivmod(x, y).second;
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.empty()) {
    const mpq_class lead = x.back();
    for (auto& c : x) c /= lead;
  }
  return x;
}

QPoly to_q(const std::vector<mpz_class>& x) {
  QPoly out(x.begin(), x.end());
  qtrim(out);
  return out;
}

/// Scales so the constant term is 1; nullopt if a coefficient is not integral.
std::optional<std::vector<mpz_class>> normalize_integral(QPoly x) {
  const mpq_class c0 = x.at(0);
  std::vector<mpz_class> out;
  for (auto& c : x) {
    c /= c0;
    if (c.get_den() != 1) return std::nullopt;
    out.push_back(c.get_num());
  }
  return out;
}

std::optional<std::vector<mpq_class>> solve(std::vector<std::vector<mpq_class>> A, std::vector<mpq_class> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && A[piv][col] == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(A[piv], A[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || A[r][col] == 0) continue;
      const mpq_class f = A[r][col] / A[col][col];
      for (std::size_t c = col; c < n; ++c) A[r][c] -= f * A[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<mpq_class> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / A[i][i];
  return x;
}

std::uint64_t euler_phi(std::uint64_t s) {
  std::uint64_t out = s;
  for (std::uint64_t p = 2; p * p <= s; ++p) {
    if (s % p == 0) {
      while (s % p == 0) s /= p;
      out -= out / p;
    }
  }
  if (s > 1) out -= out / s;
  return out;
}

}  // namespace

std::uint64_t toric_points(const Poly& f, std::uint32_t k, const FieldSpec& field, const CountOptions& opts) {
  if (opts.method == CountMethod::kOracle) return brute_toric(f, k, field, opts.enum_cap);
  ToricResult res = toric_count(f, k, field, opts.toric);
  if (opts.log != nullptr) opts.log->push_back(res);
  if (!res.exact) throw Error(ErrorKind::kInvalidArgument, "precision below (n+1)ak gives no exact count");
  return *res.count;
}

std::uint64_t affine_count(const Poly& f, std::uint32_t k, const FieldSpec& field, const CountOptions& opts) {
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "k must be >= 1");
  const std::uint32_t n = f.n;
  if (n >= 63) throw Error(ErrorKind::kInvalidArgument, "too many variables");
  const u128 qk = ipow(field.q(), k);
  u128 total = 0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    const Poly g = restrict_to_zero(f, static_cast<std::uint32_t>(mask));
    const std::uint32_t m = n - static_cast<std::uint32_t>(std::popcount(mask));
    if (g.is_zero()) {
      total += ipow(qk - 1, m);
    } else if (g.degree() > 0) {
      total += toric_points(g, k, field, opts);
    }
    if (total > UINT64_MAX) throw Error(ErrorKind::kCapExceeded, "point count does not fit in 64 bits");
  }
  return static_cast<std::uint64_t>(total);
}

std::uint64_t variety_count(const std::vector<Poly>& fs, std::uint32_t k, const FieldSpec& field,
                            const CountOptions& opts) {
  if (fs.empty()) throw Error(ErrorKind::kInvalidArgument, "variety needs at least one polynomial");
  if (fs.size() >= 32) throw Error(ErrorKind::kInvalidArgument, "too many polynomials");
  const std::uint32_t n = fs.front().n;
  for (const auto& f : fs) {
    if (f.n != n) throw Error(ErrorKind::kInvalidArgument, "polynomials disagree on n");
  }
  const u128 full = ipow(ipow(field.q(), k), n);
  __int128 total = 0;
  for (std::uint32_t S = 1; S < (1u << fs.size()); ++S) {
    Poly prod;
    bool first = true;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (!(S >> i & 1)) continue;
      prod = first ? fs[i] : multiply(prod, fs[i], field);
      first = false;
    }
    const __int128 c = prod.is_zero() ? static_cast<__int128>(full)
                                      : static_cast<__int128>(affine_count(prod, k, field, opts));
    total += (std::popcount(S) % 2 == 1) ? c : -c;
  }
  if (total < 0 || total > static_cast<__int128>(full)) {
    throw Error(ErrorKind::kInexactDivision, "inclusion-exclusion produced an impossible count");
  }
  return static_cast<std::uint64_t>(total);
}

CountSeries count_series(const std::vector<Poly>& fs, std::uint32_t D, const FieldSpec& field,
                         const CountOptions& opts) {
  if (fs.empty()) throw Error(ErrorKind::kInvalidArgument, "need at least one polynomial");
  CountSeries out{field.q(), {}};
  for (std::uint32_t k = 1; k <= D; ++k) {
    out.counts.push_back(fs.size() == 1 ? affine_count(fs[0], k, field, opts) : variety_count(fs, k, field, opts));
  }
  return out;
}

std::vector<mpz_class> zeta_series(const CountSeries& counts) {
  const std::size_t D = counts.counts.size();
  std::vector<mpz_class> z(D + 1, 0);
  z[0] = 1;
  for (std::size_t m = 1; m <= D; ++m) {
    mpz_class acc = 0;
    for (std::size_t k = 1; k <= m; ++k) acc += mpz_class(counts.counts[k - 1]) * z[m - k];
    if (!mpz_divisible_ui_p(acc.get_mpz_t(), m)) {
      throw Error(ErrorKind::kInexactDivision, "zeta coefficient " + std::to_string(m) + " is not integral");
    }
    mpz_divexact_ui(z[m].get_mpz_t(), acc.get_mpz_t(), m);
  }
  return z;
}

std::vector<mpz_class> expand(const ZetaFn& z, std::size_t terms) {
  if (z.den.empty() || z.den[0] != 1) throw Error(ErrorKind::kInvalidArgument, "denominator must have constant 1");
  std::vector<mpz_class> c(terms, 0);
  for (std::size_t m = 0; m < terms; ++m) {
    mpz_class acc = m < z.num.size() ? z.num[m] : mpz_class(0);
    for (std::size_t i = 1; i < z.den.size() && i <= m; ++i) acc -= z.den[i] * c[m - i];
    c[m] = acc;
  }
  return c;
}

std::vector<mpz_class> counts_from_zeta(const ZetaFn& zf, std::size_t D) {
  const std::vector<mpz_class> z = expand(zf, D + 1);
  std::vector<mpz_class> N(D + 1, 0);
  for (std::size_t m = 1; m <= D; ++m) {
    mpz_class acc = mpz_class(static_cast<unsigned long>(m)) * z[m];
    for (std::size_t k = 1; k < m; ++k) acc -= N[k] * z[m - k];
    N[m] = acc;
  }
  return {N.begin() + 1, N.end()};
}

ZetaFn recover_zeta(const CountSeries& counts, std::uint64_t D1, std::uint64_t D2) {
  const std::size_t D = counts.counts.size();
  if (D1 + D2 > D) {
    throw Error(ErrorKind::kInvalidArgument, "need " + std::to_string(D1 + D2) + " counts, got " + std::to_string(D));
  }
  const std::vector<mpz_class> z = zeta_series(counts);
  for (std::uint64_t d2 = D2 + 1; d2-- > 0;) {
    // unknowns u_1..u_D1 then v_1..v_d2; row m: sum_i v_i z_{m-i} - [m <= D1] u_m = -z_m
    const std::size_t size = D1 + d2;
    std::vector<std::vector<mpq_class>> A(size, std::vector<mpq_class>(size, 0));
    std::vector<mpq_class> b(size);
    for (std::size_t m = 1; m <= size; ++m) {
      if (m <= D1) A[m - 1][m - 1] = -1;
      for (std::size_t i = 1; i <= std::min<std::size_t>(m, d2); ++i) A[m - 1][D1 + i - 1] = z[m - i];
      b[m - 1] = -z[m];
    }
    const auto x = solve(std::move(A), std::move(b));
    if (!x) continue;

    QPoly r{1}, s{1};
    for (std::size_t i = 0; i < D1; ++i) r.push_back((*x)[i]);
    for (std::size_t i = 0; i < d2; ++i) s.push_back((*x)[D1 + i]);
    qtrim(r);
    qtrim(s);
    const QPoly g = qgcd(r, s);
    r = qdivmod(r, g).first;
    s = qdivmod(s, g).first;
    const mpq_class c0 = s.at(0);
    for (auto& c : r) c /= c0;
    auto num = normalize_integral(r.empty() ? QPoly{0} : r);
    auto den = normalize_integral(s);
    if (!num || !den) throw Error(ErrorKind::kNoSolution, "recovered rational function is not integral");
    ZetaFn out{std::move(*num), std::move(*den)};
    if (expand(out, D + 1) != z) {
      throw Error(ErrorKind::kNoSolution, "no rational function within the degree bounds matches the counts");
    }
    return out;
  }
  throw Error(ErrorKind::kNoSolution, "every reduced system was singular");
}

std::pair<std::uint64_t, std::uint64_t> default_bounds(std::uint32_t n, std::uint32_t d) {
  if (n == 0 || d == 0) throw Error(ErrorKind::kInvalidArgument, "bounds need n >= 1 and d >= 1");
  u128 v = 1;
  for (std::uint32_t i = 0; i < 4 * n + 4; ++i) {
    v *= 2;
    if (v > UINT64_MAX) return {UINT64_MAX, UINT64_MAX};
  }
  for (std::uint32_t i = 0; i < n; ++i) {
    v *= d;
    if (v > UINT64_MAX) return {UINT64_MAX, UINT64_MAX};
  }
  const auto b = static_cast<std::uint64_t>(v);
  return {b, b};
}

JacobianResult jacobian_order(const ZetaFn& zv, std::uint64_t q) {
  QPoly num = qmul(to_q(zv.num), QPoly{1, -mpq_class(mpz_class(q))});
  QPoly den = to_q(zv.den);
  if (num.empty() || den.empty()) throw Error(ErrorKind::kNotACurveZeta, "degenerate zeta function");
  QPoly g = qgcd(num, den);
  num = qdivmod(num, g).first;
  den = qdivmod(den, g).first;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::uint64_t s = 1; euler_phi(s) <= qdeg(num); ++s) {
      QPoly cyc(s + 1, 0);
      cyc[0] = -1;
      cyc[s] = 1;
      for (QPoly* part : {&num, &den}) {
        const QPoly h = qgcd(*part, cyc);
        if (qdeg(h) > 0) {
          *part = qdivmod(*part, h).first;
          changed = true;
        }
      }
    }
  }
  if (qdeg(den) != 0) throw Error(ErrorKind::kNotACurveZeta, "denominator keeps non-cyclotomic factors");
  for (auto& c : num) c /= den[0];
  if (num.empty() || num[0] == 0) throw Error(ErrorKind::kNotACurveZeta, "numerator vanishes at 0");
  // cyclotomic factors may leave a sign: P(0) must be +-1
  if (abs(num[0]) != 1) throw Error(ErrorKind::kNotACurveZeta, "residual P has P(0) != 1");
  const mpq_class sign = num[0];
  for (auto& c : num) c /= sign;
  JacobianResult out;
  mpq_class at_one = 0;
  for (const auto& c : num) {
    if (c.get_den() != 1) throw Error(ErrorKind::kNotACurveZeta, "residual P is not integral");
    out.P.push_back(c.get_num());
    at_one += c;
  }
  out.order = at_one.get_num();
  return out;
}

bool weil_shape(const std::vector<mpz_class>& P, std::uint64_t q) {
  std::size_t deg = P.size() - 1;
  while (deg > 0 && P[deg] == 0) --deg;
  if (deg % 2 != 0) return false;
  mpz_class lead;
  mpz_ui_pow_ui(lead.get_mpz_t(), q, deg / 2);
  return P[deg] == lead;
}

}  // namespace dwz
