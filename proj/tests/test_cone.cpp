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

#include "dwz/cone.hpp"
#include "dwz/errors.hpp"

using namespace dwz;

namespace {

// direct count of {r : r_1 + ... + r_n <= d r_0, r_0 <= t}
std::uint64_t brute_count(std::uint32_t t, std::uint32_t n, std::uint32_t d) {
  std::uint64_t total = 0;
  for (std::uint32_t r0 = 0; r0 <= t; ++r0) {
    std::vector<std::uint32_t> r(n, 0);
    const std::uint32_t budget = d * r0;
    while (true) {
      std::uint32_t s = 0;
      for (auto x : r) s += x;
      if (s <= budget) ++total;
      std::uint32_t i = 0;
      while (i < n && ++r[i] > budget) r[i++] = 0;
      if (i == n) break;
    }
  }
  return total;
}

}  // namespace

TEST_CASE("weight examples") {
  const ConeCtx c23 = ConeCtx::make(2, 3);
  CHECK(weight(std::vector<std::uint32_t>{0, 0, 0}, c23) == 0u);
  CHECK(weight(std::vector<std::uint32_t>{2, 5, 1}, c23) == 2u);
  CHECK_FALSE(weight(std::vector<std::uint32_t>{1, 3, 1}, c23).has_value());
  CHECK_THROWS_AS(ConeCtx::make(0, 1), Error);
}

TEST_CASE("enumerate examples") {
  const MonomialIndex a = MonomialIndex::enumerate(1, ConeCtx::make(1, 2));
  REQUIRE(a.size() == 4);
  const std::vector<std::vector<std::uint32_t>> expected{{0, 0}, {1, 0}, {1, 1}, {1, 2}};
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(std::vector<std::uint32_t>(a.point(i).begin(), a.point(i).end()) == expected[i]);
  }
  CHECK(MonomialIndex::enumerate(2, ConeCtx::make(2, 1)).size() == 10);
  const MonomialIndex big = MonomialIndex::enumerate(11, ConeCtx::make(2, 3));
  CHECK(big.size() == 2586);
  CHECK(brute_count(11, 2, 3) == 2586);
  CHECK(count_points(11, ConeCtx::make(2, 3)) == 2586);
  try {
    MonomialIndex::enumerate(11, ConeCtx::make(2, 3), 1000);
    FAIL("expected SizeCapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::kSizeCapExceeded);
    CHECK(std::string(e.what()).find("2586") != std::string::npos);
  }
}

TEST_CASE("closed form matches brute enumeration") {
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (std::uint32_t d = 1; d <= 3; ++d) {
      for (std::uint32_t t = 0; t <= 10; ++t) {
        const ConeCtx cc = ConeCtx::make(n, d);
        CHECK(count_points(t, cc) == brute_count(t, n, d));
        if (t <= 6) CHECK(MonomialIndex::enumerate(t, cc).size() == brute_count(t, n, d));
      }
    }
  }
}

TEST_CASE("ordering and positions") {
  struct C {
    std::uint32_t n, d, t;
  };
  for (auto [n, d, t] : {C{1, 1, 8}, C{1, 3, 6}, C{2, 1, 7}, C{2, 3, 5}, C{3, 2, 4}}) {
    const MonomialIndex ix = MonomialIndex::enumerate(t, ConeCtx::make(n, d));
    for (std::size_t i = 0; i < ix.size(); ++i) {
      const auto r = ix.point(i);
      CHECK(ix.weight_of(i) == weight(r, ix.cone()));
      CHECK(ix.position(r) == i);
      if (i > 0) {
        const auto s = ix.point(i - 1);
        const bool before = s[0] < r[0] || (s[0] == r[0] && std::lexicographical_compare(s.begin() + 1, s.end(),
                                                                                         r.begin() + 1, r.end()));
        CHECK(before);
      }
    }
    for (std::uint32_t w = 0; w <= t; ++w) CHECK(ix.prefix(w) == count_points(w, ix.cone()));
    std::vector<std::uint32_t> outside(n + 1, 0);
    outside[0] = 1;
    outside[1] = d + 1;
    CHECK_FALSE(ix.position(outside).has_value());
    outside[0] = t + 1;
    outside[1] = 0;
    CHECK_FALSE(ix.position(outside).has_value());
    std::vector<std::int64_t> neg(n + 1, 0);
    neg[1] = -1;
    CHECK_FALSE(ix.position_signed(neg).has_value());
  }
}

TEST_CASE("weight is homogeneous, subadditive and minimal") {
  std::mt19937_64 rng(19);
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (std::uint32_t d = 1; d <= 3; ++d) {
      const ConeCtx cc = ConeCtx::make(n, d);
      for (int it = 0; it < 200; ++it) {
        std::vector<std::uint32_t> r(n + 1), s(n + 1);
        for (auto& x : r) x = rng() % 6;
        for (auto& x : s) x = rng() % 6;
        const auto wr = weight(r, cc), ws = weight(s, cc);
        const std::uint32_t k = 1 + rng() % 4;
        std::vector<std::uint32_t> kr(r), rs(n + 1);
        for (auto& x : kr) x *= k;
        for (std::uint32_t i = 0; i <= n; ++i) rs[i] = r[i] + s[i];
        if (wr) {
          CHECK(weight(kr, cc) == k * *wr);
          // r lies in w(r) Delta but not in (w(r) - 1) Delta
          std::uint32_t sum = 0;
          for (std::uint32_t i = 1; i <= n; ++i) sum += r[i];
          CHECK(sum <= d * *wr);
          CHECK(r[0] <= *wr);
          if (*wr > 0) CHECK_FALSE((r[0] <= *wr - 1 && sum <= d * r[0]));
        }
        if (wr && ws) {
          const auto wrs = weight(rs, cc);
          REQUIRE(wrs.has_value());
          CHECK(*wrs <= *wr + *ws);
        }
      }
    }
  }
}

TEST_CASE("Blichfeldt bound") {
  for (std::uint32_t n = 1; n <= 3; ++n) {
    for (std::uint32_t d = 1; d <= 4; ++d) {
      for (std::uint32_t t = 1; t <= 30; ++t) {
        std::uint64_t fact = 1;
        for (std::uint32_t i = 2; i <= n + 1; ++i) fact *= i;
        std::uint64_t bound = fact;
        for (std::uint32_t i = 0; i < n; ++i) bound *= d;
        for (std::uint32_t i = 0; i <= n; ++i) bound *= t;
        CHECK(count_points(t, ConeCtx::make(n, d)) <= bound + n + 1);
      }
    }
  }
}
