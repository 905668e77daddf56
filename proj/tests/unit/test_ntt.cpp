/*
 * Copyright 2026 The ambfhe Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <vector>

#include "ambfhe/ckks/ntt.hpp"
#include "ambfhe/ckks/rng.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace ambfhe::ckks;

TEST_CASE("prime search returns distinct NTT primes of the right size") {
  auto primes = find_ntt_primes(4096, {58, 40, 40});
  REQUIRE(primes.size() == 3);
  CHECK(primes[1] != primes[2]);
  for (std::size_t i = 0; i < primes.size(); ++i) {
    CHECK(is_prime(primes[i]));
    CHECK((primes[i] - 1) % 8192 == 0);
  }
  CHECK(primes[0] > (1ULL << 57));
  CHECK(primes[0] < (1ULL << 58));
  CHECK(primes[1] < (1ULL << 40));
  CHECK(primes[1] > (1ULL << 39));
}

TEST_CASE("forward/inverse NTT round-trips") {
  for (std::size_t n : {16, 256}) {
    auto primes = find_ntt_primes(n, {40});
    NttTable table(primes[0], n);
    ChaChaRng rng(7);
    std::vector<u64> a(n);
    for (auto& x : a) x = rng.uniform_below(primes[0]);
    std::vector<u64> b = a;
    table.forward(b.data());
    table.inverse(b.data());
    CHECK(b == a);
  }
}

TEST_CASE("NTT pointwise product equals schoolbook negacyclic product") {
  std::size_t n = 32;
  auto primes = find_ntt_primes(n, {40});
  u64 q = primes[0];
  NttTable table(q, n);
  ChaChaRng rng(11);
  std::vector<u64> a(n), b(n);
  for (auto& x : a) x = rng.uniform_below(q);
  for (auto& x : b) x = rng.uniform_below(q);

  auto expected = ambfhe::oracles::negacyclic_mul(a, b, q);

  std::vector<u64> fa = a, fb = b;
  table.forward(fa.data());
  table.forward(fb.data());
  for (std::size_t i = 0; i < n; ++i) fa[i] = mul_mod(fa[i], fb[i], q);
  table.inverse(fa.data());
  CHECK(fa == expected);
}

TEST_CASE("natural-order NTT exposes Galois automorphism as a permutation") {
  // Verify NTT(a(X^g))[i] == NTT(a)[perm(i)] against a coefficient-domain
  // automorphism computed directly.
  std::size_t n = 16;
  auto primes = find_ntt_primes(n, {40});
  u64 q = primes[0];
  NttTable table(q, n);
  ChaChaRng rng(3);
  std::vector<u64> a(n);
  for (auto& x : a) x = rng.uniform_below(q);

  u64 g = 5;  // rotation by one slot
  std::vector<u64> composed(n, 0);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t e = (j * g) % (2 * n);
    if (e < n) {
      composed[e] = add_mod(composed[e], a[j], q);
    } else {
      composed[e - n] = sub_mod(composed[e - n], a[j], q);
    }
  }

  std::vector<u64> lhs = composed, rhs = a;
  table.forward(lhs.data());
  table.forward(rhs.data());
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = (((2 * i + 1) * g) % (2 * n) - 1) / 2;
    CHECK(lhs[i] == rhs[j]);
  }
}
