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

#include "dwz/ffield.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <numeric>
#include <sstream>

#include "dwz/errors.hpp"

namespace dwz {

namespace {

using Word = std::uint64_t;
using FpPoly = std::vector<std::uint32_t>;

std::uint32_t fp_inv(std::uint32_t x, std::uint32_t p) {
  std::int64_t a = x, b = p, u = 1, v = 0;
  while (b != 0) {
    const std::int64_t t = a / b;
    a -= t * b;
    std::swap(a, b);
    u -= t * v;
    std::swap(u, v);
  }
  u %= static_cast<std::int64_t>(p);
  if (u < 0) u += p;
  return static_cast<std::uint32_t>(u);
}

void fp_trim(FpPoly& g) {
  while (!g.empty() && g.back() == 0) g.pop_back();
}

// (q, r) with x = q*y + r over F_p; y nonzero.
std::pair<FpPoly, FpPoly> fp_divmod(FpPoly x, const FpPoly& y, std::uint32_t p) {
  fp_trim(x);
  FpPoly quot;
  if (x.size() < y.size()) return {quot, x};
  quot.assign(x.size() - y.size() + 1, 0);
  const std::uint32_t lead_inv = fp_inv(y.back(), p);
  for (std::size_t i = x.size(); i-- >= y.size();) {
    const Word c = static_cast<Word>(x[i]) * lead_inv % p;
    if (c == 0) continue;
    const std::size_t shift = i - (y.size() - 1);
    quot[shift] = static_cast<std::uint32_t>(c);
    for (std::size_t j = 0; j < y.size(); ++j) {
      x[shift + j] = static_cast<std::uint32_t>((x[shift + j] + (p - c) * y[j]) % p);
    }
  }
  fp_trim(x);
  return {quot, x};
}

FpPoly fp_mul(const FpPoly& x, const FpPoly& y, std::uint32_t p) {
  if (x.empty() || y.empty()) return {};
  FpPoly out(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < y.size(); ++j) {
      out[i + j] = static_cast<std::uint32_t>((out[i + j] + static_cast<Word>(x[i]) * y[j]) % p);
    }
  }
  fp_trim(out);
  return out;
}

FpPoly fp_sub(FpPoly x, const FpPoly& y, std::uint32_t p) {
  if (x.size() < y.size()) x.resize(y.size(), 0);
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = (x[i] + p - y[i]) % p;
  fp_trim(x);
  return x;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime_field(std::uint32_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::kNotPrime, std::to_string(p) + " is not prime");
  return FieldSpec(p, 1, {0, 1});
}

FieldSpec FieldSpec::make(std::uint32_t p, std::uint32_t a,
                          std::optional<std::vector<std::uint32_t>> h) {
  if (!is_prime(p)) throw Error(ErrorKind::kNotPrime, std::to_string(p) + " is not prime");
  if (a == 0) throw Error(ErrorKind::kInvalidArgument, "extension degree must be >= 1");
  if (p >= (1u << 31)) throw Error(ErrorKind::kInvalidArgument, "characteristic too large");
  const FieldSpec base = prime_field(p);
  if (!h) {
    const FqPoly g = find_irreducible(base, a);
    std::vector<std::uint32_t> coeffs;
    for (const auto& c : g) coeffs.push_back(c.coeffs[0]);
    return FieldSpec(p, a, std::move(coeffs));
  }
  std::vector<std::uint32_t> coeffs = *h;
  if (coeffs.size() != a + 1 || coeffs.back() != 1) {
    throw Error(ErrorKind::kInvalidArgument, "modulus must be monic of degree " + std::to_string(a));
  }
  FqPoly g;
  for (auto& c : coeffs) {
    if (c >= p) throw Error(ErrorKind::kInvalidArgument, "modulus coefficients must lie in [0, p)");
    g.push_back(FqElem{{c}});
  }
  if (!is_irreducible(g, base)) throw Error(ErrorKind::kReducible, "modulus is reducible over F_p");
  return FieldSpec(p, a, std::move(coeffs));
}

std::uint64_t FieldSpec::q() const {
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < a_; ++i) {
    if (q > (std::numeric_limits<std::uint64_t>::max() >> 1) / p_) {
      throw Error(ErrorKind::kSizeCapExceeded, "field size exceeds 63 bits");
    }
    q *= p_;
  }
  return q;
}

void FieldSpec::check(const FqElem& x) const {
  if (x.coeffs.size() != a_) throw Error(ErrorKind::kCtxMismatch, "element belongs to a different field");
}

FqElem FieldSpec::zero() const { return FqElem{std::vector<std::uint32_t>(a_, 0)}; }

FqElem FieldSpec::one() const { return from_int(1); }

FqElem FieldSpec::from_int(std::int64_t v) const {
  FqElem out = zero();
  std::int64_t r = v % static_cast<std::int64_t>(p_);
  if (r < 0) r += p_;
  out.coeffs[0] = static_cast<std::uint32_t>(r);
  return out;
}

FqElem FieldSpec::from_coeffs(std::span<const std::int64_t> c) const {
  if (c.size() > a_) throw Error(ErrorKind::kInvalidArgument, "too many coordinates for F_q element");
  FqElem out = zero();
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::int64_t r = c[i] % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    out.coeffs[i] = static_cast<std::uint32_t>(r);
  }
  return out;
}

FqElem FieldSpec::generator_y() const {
  if (a_ == 1) {
    // y = -h_0 in F_p[y]/(y + h_0)
    return from_int(-static_cast<std::int64_t>(h_[0]));
  }
  FqElem out = zero();
  out.coeffs[1] = 1;
  return out;
}

bool FieldSpec::is_zero(const FqElem& x) const noexcept {
  return std::all_of(x.coeffs.begin(), x.coeffs.end(), [](std::uint32_t c) { return c == 0; });
}

bool FieldSpec::in_prime_field(const FqElem& x) const noexcept {
  return std::all_of(x.coeffs.begin() + 1, x.coeffs.end(), [](std::uint32_t c) { return c == 0; });
}

FqElem FieldSpec::add(const FqElem& x, const FqElem& y) const {
  check(x);
  check(y);
  FqElem out = x;
  for (std::uint32_t i = 0; i < a_; ++i) out.coeffs[i] = (x.coeffs[i] + y.coeffs[i]) % p_;
  return out;
}

FqElem FieldSpec::sub(const FqElem& x, const FqElem& y) const {
  check(x);
  check(y);
  FqElem out = x;
  for (std::uint32_t i = 0; i < a_; ++i) out.coeffs[i] = (x.coeffs[i] + p_ - y.coeffs[i]) % p_;
  return out;
}

FqElem FieldSpec::neg(const FqElem& x) const { return sub(zero(), x); }

FqElem FieldSpec::mul(const FqElem& x, const FqElem& y) const {
  check(x);
  check(y);
  std::vector<Word> prod(2 * a_ - 1, 0);
  for (std::uint32_t i = 0; i < a_; ++i) {
    if (x.coeffs[i] == 0) continue;
    for (std::uint32_t j = 0; j < a_; ++j) {
      prod[i + j] = (prod[i + j] + static_cast<Word>(x.coeffs[i]) * y.coeffs[j]) % p_;
    }
  }
  // y^a = -sum h_i y^i
  for (std::size_t k = prod.size(); k-- > a_;) {
    const Word c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (std::uint32_t i = 0; i < a_; ++i) {
      prod[k - a_ + i] = (prod[k - a_ + i] + (p_ - h_[i]) * c) % p_;
    }
  }
  FqElem out = zero();
  for (std::uint32_t i = 0; i < a_; ++i) out.coeffs[i] = static_cast<std::uint32_t>(prod[i]);
  return out;
}

FqElem FieldSpec::inv(const FqElem& x) const {
  check(x);
  if (is_zero(x)) throw Error(ErrorKind::kDivisionByZero, "inverse of zero in F_q");
  FpPoly r0(h_.begin(), h_.end());
  FpPoly r1(x.coeffs.begin(), x.coeffs.end());
  fp_trim(r1);
  FpPoly s0, s1{1};
  while (!r1.empty()) {
    auto [quot, rem] = fp_divmod(r0, r1, p_);
    FpPoly s2 = fp_sub(s0, fp_mul(quot, s1, p_), p_);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a nonzero constant since h is irreducible
  const std::uint32_t c = fp_inv(r0[0], p_);
  FqElem out = zero();
  for (std::size_t i = 0; i < s0.size() && i < a_; ++i) {
    out.coeffs[i] = static_cast<std::uint32_t>(static_cast<Word>(s0[i]) * c % p_);
  }
  return out;
}

FqElem FieldSpec::pow(FqElem x, std::uint64_t e) const {
  FqElem out = one();
  while (e != 0) {
    if (e & 1) out = mul(out, x);
    e >>= 1;
    if (e != 0) x = mul(x, x);
  }
  return out;
}

std::uint64_t FieldSpec::encode(const FqElem& x) const {
  check(x);
  std::uint64_t idx = 0;
  for (std::uint32_t i = a_; i-- > 0;) idx = idx * p_ + x.coeffs[i];
  return idx;
}

FqElem FieldSpec::decode(std::uint64_t index) const {
  FqElem out = zero();
  for (std::uint32_t i = 0; i < a_; ++i) {
    out.coeffs[i] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Univariate polynomials over F_q

void trim(FqPoly& g, const FieldSpec& f) {
  while (!g.empty() && f.is_zero(g.back())) g.pop_back();
}

FqPoly poly_sub(const FqPoly& x, const FqPoly& y, const FieldSpec& f) {
  FqPoly out(std::max(x.size(), y.size()), f.zero());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i];
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = f.sub(out[i], y[i]);
  trim(out, f);
  return out;
}

FqPoly poly_mul(const FqPoly& x, const FqPoly& y, const FieldSpec& f) {
  if (x.empty() || y.empty()) return {};
  FqPoly out(x.size() + y.size() - 1, f.zero());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (f.is_zero(x[i])) continue;
    for (std::size_t j = 0; j < y.size(); ++j) out[i + j] = f.add(out[i + j], f.mul(x[i], y[j]));
  }
  trim(out, f);
  return out;
}

FqPoly poly_mod(FqPoly x, const FqPoly& m, const FieldSpec& f) {
  if (m.empty()) throw Error(ErrorKind::kDivisionByZero, "polynomial modulus is zero");
  trim(x, f);
  const FqElem lead_inv = f.inv(m.back());
  while (x.size() >= m.size()) {
    const FqElem c = f.mul(x.back(), lead_inv);
    const std::size_t shift = x.size() - m.size();
    for (std::size_t j = 0; j < m.size(); ++j) x[shift + j] = f.sub(x[shift + j], f.mul(c, m[j]));
    trim(x, f);
  }
  return x;
}

FqPoly poly_gcd(FqPoly x, FqPoly y, const FieldSpec& f) {
  trim(x, f);
  trim(y, f);
  while (!y.empty()) {
    FqPoly r = poly_mod(x, y, f);
    x = std::move(y);
    y = std::move(r);
  }
  if (!x.empty()) {
    const FqElem c = f.inv(x.back());
    for (auto& e : x) e = f.mul(e, c);
  }
  return x;
}

FqPoly poly_powmod(const FqPoly& base, std::uint64_t e, const FqPoly& m, const FieldSpec& f) {
  FqPoly out = poly_mod({f.one()}, m, f);
  FqPoly b = poly_mod(base, m, f);
  while (e != 0) {
    if (e & 1) out = poly_mod(poly_mul(out, b, f), m, f);
    e >>= 1;
    if (e != 0) b = poly_mod(poly_mul(b, b, f), m, f);
  }
  return out;
}

bool is_irreducible(const FqPoly& g_in, const FieldSpec& f) {
  FqPoly g = g_in;
  trim(g, f);
  if (g.size() < 2) throw Error(ErrorKind::kInvalidArgument, "irreducibility test needs degree >= 1");
  if (g.back() != f.one()) throw Error(ErrorKind::kInvalidArgument, "irreducibility test needs a monic polynomial");
  const std::uint32_t k = static_cast<std::uint32_t>(g.size() - 1);
  if (k == 1) return true;
  const std::uint64_t q = f.q();
  const FqPoly z = poly_mod({f.zero(), f.one()}, g, f);

  // frob[j] = z^{q^j} mod g
  std::vector<FqPoly> frob{z};
  for (std::uint32_t j = 1; j <= k; ++j) frob.push_back(poly_powmod(frob.back(), q, g, f));
  if (poly_sub(frob[k], z, f) != FqPoly{}) return false;
  for (std::uint32_t l = 2; l <= k; ++l) {
    if (k % l != 0 || !is_prime(l)) continue;
    const FqPoly diff = poly_sub(frob[k / l], z, f);
    if (poly_gcd(diff, g, f).size() != 1) return false;
  }
  return true;
}

FqPoly find_irreducible(const FieldSpec& f, std::uint32_t k) {
  if (k == 0) throw Error(ErrorKind::kInvalidArgument, "degree must be >= 1");
  const std::uint64_t q = f.q();
  // k coefficient slots, each one of q values; constant term varies fastest
  std::vector<std::uint64_t> digits(k, 0);
  while (true) {
    FqPoly g;
    for (std::uint32_t i = 0; i < k; ++i) g.push_back(f.decode(digits[i]));
    g.push_back(f.one());
    if (is_irreducible(g, f)) return g;
    std::uint32_t i = 0;
    while (i < k && ++digits[i] == q) digits[i++] = 0;
    if (i == k) break;
  }
  throw Error(ErrorKind::kNoIrreducibleFound, "no irreducible polynomial of degree " + std::to_string(k));
}

// ---------------------------------------------------------------------------
// Multivariate polynomials

std::uint32_t Poly::degree() const noexcept {
  std::uint32_t d = 0;
  for (const auto& [e, c] : terms) d = std::max(d, std::accumulate(e.begin(), e.end(), 0u));
  return d;
}

Poly poly_from_terms(std::uint32_t n, const std::vector<std::pair<Poly::Exponent, FqElem>>& terms,
                     const FieldSpec& f) {
  Poly out;
  out.n = n;
  for (const auto& [e, c] : terms) {
    if (e.size() != n) throw Error(ErrorKind::kInvalidArgument, "exponent length differs from variable count");
    auto [it, inserted] = out.terms.try_emplace(e, c);
    if (!inserted) it->second = f.add(it->second, c);
  }
  std::erase_if(out.terms, [&](const auto& kv) { return f.is_zero(kv.second); });
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view text, std::uint32_t n, const FieldSpec& f) : n_(n), f_(f) {
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (!std::isspace(static_cast<unsigned char>(text[i]))) {
        chars_.push_back(text[i]);
        pos_.push_back(i);
      }
    }
  }

  Poly parse() {
    if (chars_.empty()) fail("empty polynomial");
    std::vector<std::pair<Poly::Exponent, FqElem>> terms;
    bool minus = peek() == '-';
    if (minus) ++at_;
    for (;;) {
      auto t = term();
      if (minus) t.second = f_.neg(t.second);
      terms.push_back(std::move(t));
      if (peek() != '+' && peek() != '-') break;
      minus = chars_[at_++] == '-';
    }
    if (at_ != chars_.size()) fail(std::string("unexpected character '") + chars_[at_] + "'");
    return poly_from_terms(n_, terms, f_);
  }

 private:
  char peek() const { return at_ < chars_.size() ? chars_[at_] : '\0'; }

  [[noreturn]] void fail(const std::string& msg, ErrorKind kind = ErrorKind::kParseError) const {
    const std::size_t where = at_ < pos_.size() ? pos_[at_] : (pos_.empty() ? 0 : pos_.back() + 1);
    throw Error(kind, msg + " at position " + std::to_string(where));
  }

  std::uint64_t integer() {
    if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected integer");
    std::uint64_t v = 0;
    while (std::isdigit(static_cast<unsigned char>(peek()))) {
      if (v > (std::numeric_limits<std::uint64_t>::max() - 9) / 10) fail("integer too large");
      v = v * 10 + static_cast<std::uint64_t>(chars_[at_++] - '0');
    }
    return v;
  }

  void variable(Poly::Exponent& e) {
    ++at_;  // 'x'
    const std::size_t start = at_;
    const std::uint64_t idx = integer();
    if (idx == 0 || idx > n_) {
      at_ = start;
      fail("variable x" + std::to_string(idx) + " outside x1..x" + std::to_string(n_),
           ErrorKind::kVariableOutOfRange);
    }
    std::uint64_t power = 1;
    if (peek() == '^') {
      ++at_;
      power = integer();
    }
    const std::uint64_t total = e[idx - 1] + power;
    if (total > std::numeric_limits<std::uint32_t>::max()) fail("exponent too large");
    e[idx - 1] = static_cast<std::uint32_t>(total);
  }

  std::pair<Poly::Exponent, FqElem> term() {
    Poly::Exponent e(n_, 0);
    FqElem c = f_.one();
    bool need_var = true;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = f_.from_int(static_cast<std::int64_t>(integer() % f_.p()));
      need_var = false;
    } else if (peek() == '{') {
      ++at_;
      std::vector<std::int64_t> coords{static_cast<std::int64_t>(integer() % f_.p())};
      while (peek() == ',') {
        ++at_;
        coords.push_back(static_cast<std::int64_t>(integer() % f_.p()));
      }
      if (peek() != '}') fail("expected '}'");
      if (coords.size() > f_.a()) fail("coefficient vector longer than extension degree");
      ++at_;
      c = f_.from_coeffs(coords);
      need_var = false;
    } else if (peek() != 'x') {
      fail("expected coefficient or variable");
    }
    if (need_var) {
      variable(e);
    }
    while (peek() == '*') {
      ++at_;
      if (peek() != 'x') fail("expected variable after '*'");
      variable(e);
    }
    return {e, c};
  }

  std::uint32_t n_;
  const FieldSpec& f_;
  std::vector<char> chars_;
  std::vector<std::size_t> pos_;
  std::size_t at_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, std::uint32_t n, const FieldSpec& f) {
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "variable count must be >= 1");
  return PolyParser(text, n, f).parse();
}

std::string render_poly(const Poly& g, const FieldSpec& f) {
  if (g.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // highest total degree first, ties by descending exponent vector
  std::vector<const std::pair<const Poly::Exponent, FqElem>*> order;
  for (const auto& kv : g.terms) order.push_back(&kv);
  std::stable_sort(order.begin(), order.end(), [](auto* x, auto* y) {
    const auto dx = std::accumulate(x->first.begin(), x->first.end(), 0u);
    const auto dy = std::accumulate(y->first.begin(), y->first.end(), 0u);
    if (dx != dy) return dx > dy;
    return x->first > y->first;
  });
  for (const auto* kv : order) {
    const auto& [e, c] = *kv;
    if (!first) os << " + ";
    first = false;
    const bool constant = std::all_of(e.begin(), e.end(), [](std::uint32_t v) { return v == 0; });
    bool wrote = false;
    if (f.in_prime_field(c)) {
      if (c.coeffs[0] != 1 || constant) {
        os << c.coeffs[0];
        wrote = true;
      }
    } else {
      os << '{';
      std::size_t len = c.coeffs.size();
      while (len > 1 && c.coeffs[len - 1] == 0) --len;
      for (std::size_t i = 0; i < len; ++i) os << (i ? "," : "") << c.coeffs[i];
      os << '}';
      wrote = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (wrote) os << '*';
      os << 'x' << (i + 1);
      if (e[i] != 1) os << '^' << e[i];
      wrote = true;
    }
  }
  return os.str();
}

Poly multiply(const Poly& x, const Poly& y, const FieldSpec& f) {
  if (x.n != y.n) throw Error(ErrorKind::kInvalidArgument, "variable counts differ");
  std::vector<std::pair<Poly::Exponent, FqElem>> terms;
  for (const auto& [ex, cx] : x.terms) {
    for (const auto& [ey, cy] : y.terms) {
      Poly::Exponent e(x.n);
      for (std::uint32_t i = 0; i < x.n; ++i) e[i] = ex[i] + ey[i];
      terms.emplace_back(std::move(e), f.mul(cx, cy));
    }
  }
  return poly_from_terms(x.n, terms, f);
}

Poly restrict_to_zero(const Poly& g, std::uint32_t zero_mask) {
  Poly out;
  for (std::uint32_t i = 0; i < g.n; ++i) {
    if (!(zero_mask >> i & 1u)) ++out.n;
  }
  for (const auto& [e, c] : g.terms) {
    bool killed = false;
    Poly::Exponent kept;
    for (std::uint32_t i = 0; i < g.n; ++i) {
      if (zero_mask >> i & 1u) {
        killed |= e[i] != 0;
      } else {
        kept.push_back(e[i]);
      }
    }
    if (!killed) out.terms.emplace(std::move(kept), c);
  }
  return out;
}

Poly permute_variables(const Poly& g, std::span<const std::uint32_t> perm) {
  if (perm.size() != g.n) throw Error(ErrorKind::kInvalidArgument, "permutation length differs from variable count");
  Poly out;
  out.n = g.n;
  for (const auto& [e, c] : g.terms) {
    Poly::Exponent pe(g.n);
    for (std::uint32_t i = 0; i < g.n; ++i) pe[i] = e[perm[i]];
    out.terms.emplace(std::move(pe), c);
  }
  return out;
}

FqElem evaluate(const Poly& g, std::span<const FqElem> point, const FieldSpec& f) {
  if (point.size() != g.n) throw Error(ErrorKind::kInvalidArgument, "point dimension differs from variable count");
  FqElem acc = f.zero();
  for (const auto& [e, c] : g.terms) {
    FqElem t = c;
    for (std::uint32_t i = 0; i < g.n; ++i) {
      if (e[i] != 0) t = f.mul(t, f.pow(point[i], e[i]));
    }
    acc = f.add(acc, t);
  }
  return acc;
}

}  // namespace dwz
