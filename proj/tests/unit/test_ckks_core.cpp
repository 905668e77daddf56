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

#include <algorithm>
#include <cmath>
#include <vector>

#include "ambfhe/ckks/evaluator.hpp"
#include "ambfhe/ckks/serialize.hpp"
#include "doctest.h"
#include "support/oracles.hpp"

using namespace ambfhe::ckks;

namespace {

std::vector<double> random_vec(ChaChaRng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform_double() * 2.0 - 1.0;
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

struct ToyFixture {
  CkksContext ctx{CkksParams::preset("toy-n16"), 12345};
  KeyBundle keys = ctx.keygen({1, 2, 3, 4, 5, 7});
  Evaluator eval{ctx};
};

}  // namespace

TEST_CASE("preset slot counts and validation") {
  CHECK(CkksParams::preset("PN12QP109").slot_count() == 2048);
  CHECK(CkksParams::preset("PN13QP218").slot_count() == 4096);
  CHECK(CkksParams::preset("toy-n16").slot_count() == 8);
  CHECK_THROWS_AS(CkksParams::preset("PN99"), std::invalid_argument);

  CkksParams bad = CkksParams::preset("toy-n16");
  bad.ring_dim = 24;  // not a power of two
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
  bad = CkksParams::preset("toy-n16");
  bad.modulus_chain.resize(1);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("keygen produces exactly the requested galois steps") {
  CkksContext ctx(CkksParams::preset("toy-n16"), 1);
  auto keys = ctx.keygen({1, 2, 4});
  CHECK(keys.evk.galois.size() == 3);
  CHECK(keys.evk.has_step(1));
  CHECK(keys.evk.has_step(2));
  CHECK(keys.evk.has_step(4));
  CHECK(!keys.evk.has_step(3));
  CHECK_THROWS_AS(ctx.keygen({0}), std::invalid_argument);
  CHECK_THROWS_AS(ctx.keygen({8}), std::invalid_argument);
}

TEST_CASE("encode/decode identity within 2^-20 at the default scale") {
  ToyFixture f;
  ChaChaRng rng(99);
  for (int trial = 0; trial < 25; ++trial) {
    auto v = random_vec(rng, 8);
    auto back = f.ctx.decode(f.ctx.encode(v));
    CHECK(max_abs_diff(v, back) < std::ldexp(1.0, -20));
  }
  // Spec'd toy example: geometric pattern, error well under 1e-6.
  std::vector<double> pat = {1.0, -0.5, 0.25, -0.125, 0.0625, -0.03125, 0.015625, -0.0078125};
  CHECK(max_abs_diff(pat, f.ctx.decode(f.ctx.encode(pat))) < 1e-6);
}

TEST_CASE("encrypt/decrypt round trip and probabilistic encryption") {
  ToyFixture f;
  ChaChaRng rng(5);
  auto v = random_vec(rng, 8);
  Plaintext pt = f.ctx.encode(v);

  Ciphertext c1 = f.ctx.encrypt(f.keys.pk, pt);
  Ciphertext c2 = f.ctx.encrypt(f.keys.pk, pt);
  CHECK(serialize(c1) != serialize(c2));  // fresh randomness per call
  CHECK(max_abs_diff(v, f.ctx.decode(f.ctx.decrypt(f.keys.sk, c1))) < 1e-4);
  CHECK(max_abs_diff(v, f.ctx.decode(f.ctx.decrypt(f.keys.sk, c2))) < 1e-4);

  std::vector<double> zeros(8, 0.0);
  Ciphertext cz = f.ctx.encrypt(f.keys.pk, f.ctx.encode(zeros));
  CHECK(max_abs_diff(zeros, f.ctx.decode(f.ctx.decrypt(f.keys.sk, cz))) < 1e-6);
}

TEST_CASE("decrypt rejects a 3-part ciphertext") {
  ToyFixture f;
  auto v = random_vec(*(new ChaChaRng(8)), 8);  // NOLINT -- test-local leak is fine
  Ciphertext a = f.ctx.encrypt(f.keys.pk, f.ctx.encode(v));
  Ciphertext raw = f.eval.mul_raw(a, a);
  CHECK(raw.parts.size() == 3);
  CHECK_THROWS_AS(f.ctx.decrypt(f.keys.sk, raw), MalformedCiphertext);
}

TEST_CASE("additive homomorphism with plaintext oracle") {
  ToyFixture f;
  ChaChaRng rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    auto u = random_vec(rng, 8);
    auto v = random_vec(rng, 8);
    Ciphertext cu = f.ctx.encrypt(f.keys.pk, f.ctx.encode(u));
    Ciphertext cv = f.ctx.encrypt(f.keys.pk, f.ctx.encode(v));

    std::vector<double> expect(8);
    for (int i = 0; i < 8; ++i) expect[i] = u[i] + v[i];
    auto got = f.ctx.decode(f.ctx.decrypt(f.keys.sk, f.eval.add(cu, cv)));
    CHECK(max_abs_diff(expect, got) < 1e-4);

    // Commutativity in decrypted value.
    auto got2 = f.ctx.decode(f.ctx.decrypt(f.keys.sk, f.eval.add(cv, cu)));
    CHECK(max_abs_diff(got, got2) < 1e-9);
  }
}

TEST_CASE("additive identity, sub and negate") {
  ToyFixture f;
  ChaChaRng rng(22);
  auto v = random_vec(rng, 8);
  Ciphertext cv = f.ctx.encrypt(f.keys.pk, f.ctx.encode(v));
  std::vector<double> zeros(8, 0.0);
  Ciphertext cz = f.ctx.encrypt(f.keys.pk, f.ctx.encode(zeros));

  CHECK(max_abs_diff(v, f.ctx.decode(f.ctx.decrypt(f.keys.sk, f.eval.add(cv, cz)))) < 1e-4);

  auto diff = f.ctx.decode(f.ctx.decrypt(f.keys.sk, f.eval.sub(cv, cv)));
  CHECK(max_abs_diff(zeros, diff) < 1e-6);

  auto neg = f.ctx.decode(f.ctx.decrypt(f.keys.sk, f.eval.negate(cv)));
  std::vector<double> mv(8);
  for (int i = 0; i < 8; ++i) mv[i] = -v[i];
  CHECK(max_abs_diff(mv, neg) < 1e-4);

  auto ap = f.ctx.decode(
      f.ctx.decrypt(f.keys.sk, f.eval.add_plain(cv, f.ctx.encode(zeros))));
  CHECK(max_abs_diff(v, ap) < 1e-4);
}

TEST_CASE("multiplicative homomorphism: Hadamard oracle, identity, annihilator") {
  ToyFixture f;
  ChaChaRng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    auto u = random_vec(rng, 8);
    auto v = random_vec(rng, 8);
    Ciphertext cu = f.ctx.encrypt(f.keys.pk, f.ctx.encode(u));
    Ciphertext cv = f.ctx.encrypt(f.keys.pk, f.ctx.encode(v));
    Ciphertext prod = f.eval.mul(cu, cv, f.keys.evk);

    CHECK(prod.level == cu.level - 1);
    CHECK(prod.parts.size() == 2);

    std::vector<double> expect(8);
    for (int i = 0; i < 8; ++i) expect[i] = u[i] * v[i];
    auto got = f.ctx.decode(f.ctx.decrypt(f.keys.sk, prod));
    CHECK(max_abs_diff(expect, got) < 1e-4);
  }

  auto v = random_vec(rng, 8);
  std::vector<double> ones(8, 1.0), zeros(8, 0.0);
  Ciphertext cv = f.ctx.encrypt(f.keys.pk, f.ctx.encode(v));
  Ciphertext c1 = f.ctx.encrypt(f.keys.pk, f.ctx.encode(ones));
  Ciphertext c0 = f.ctx.encrypt(f.keys.pk, f.ctx.encode(zeros));
  CHECK(max_abs_diff(v, f.ctx.decode(f.ctx.decrypt(f.keys.sk, f.eval.mul(cv, c1, f.keys.evk)))) < 1e-4);
  CHECK(max_abs_diff(zeros, f.ctx.decode(f.ctx.decrypt(f.keys.sk, f.eval.mul(cv, c0, f.keys.evk)))) < 1e-4);

  // mul_plain follows the same oracle.
  auto u = random_vec(rng, 8);
  Ciphertext mp = f.eval.mul_plain(cv, f.ctx.encode(u));
  std::vector<double> expect(8);
  for (int i = 0; i < 8; ++i) expect[i] = u[i] * v[i];
  CHECK(max_abs_diff(expect, f.ctx.decode(f.ctx.decrypt(f.keys.sk, mp))) < 1e-4);
}

TEST_CASE("scale and level bookkeeping is exact metadata algebra") {
  ToyFixture f;
  ChaChaRng rng(31);
  auto u = random_vec(rng, 8);
  auto v = random_vec(rng, 8);
  double scale = f.ctx.default_scale();
  Ciphertext cu = f.ctx.encrypt(f.keys.pk, f.ctx.encode(u));
  Ciphertext cv = f.ctx.encrypt(f.keys.pk, f.ctx.encode(v));

  CHECK(cu.level == f.ctx.top_level());
  CHECK(cu.scale == scale);

  Ciphertext sum = f.eval.add(cu, cv);
  CHECK(sum.level == cu.level);
  CHECK(sum.scale == scale);

  Ciphertext raw = f.eval.mul_raw(cu, cv);
  CHECK(raw.scale == scale * scale);
  CHECK(raw.level == cu.level);

  Ciphertext prod = f.eval.mul(cu, cv, f.keys.evk);
  u64 dropped = f.ctx.ring().chain_prime(f.ctx.top_level());
  CHECK(prod.level == f.ctx.top_level() - 1);
  CHECK(prod.scale == (scale * scale) / static_cast<double>(dropped));

  Ciphertext rot = f.eval.rotate(cu, 2, f.keys.evk);
  CHECK(rot.level == cu.level);
  CHECK(rot.scale == cu.scale);

  // Mismatch checks.
  CHECK_THROWS_AS(f.eval.add(prod, cu), LevelMismatch);
  Ciphertext cw = f.ctx.encrypt(f.keys.pk, f.ctx.encode(u, scale * 2, f.ctx.top_level()));
  CHECK_THROWS_AS(f.eval.add(cu, cw), ScaleMismatch);

  // Chain has two rescaling primes: two muls pass, the third is refused.
  Ciphertext lvl1 = f.eval.mul(cu, cv, f.keys.evk);
  Ciphertext lvl1b = f.eval.mul(cu, cv, f.keys.evk);
  Ciphertext lvl0 = f.eval.mul(lvl1, lvl1b, f.keys.evk);
  CHECK(lvl0.level == 0);
  CHECK_THROWS_AS(f.eval.mul(lvl0, lvl0, f.keys.evk), LevelExhausted);
}

TEST_CASE("rotation matches the cyclic-shift oracle") {
  ToyFixture f;
  std::vector<double> v = {1, 2, 3, 4, 0, 0, 0, 0};
  Ciphertext cv = f.ctx.encrypt(f.keys.pk, f.ctx.encode(v));

  // Identity rotation.
  auto same = f.ctx.decode(f.ctx.decrypt(f.keys.sk, f.eval.rotate(cv, 0, f.keys.evk)));
  CHECK(max_abs_diff(v, same) < 1e-6);

  auto r1 = f.ctx.decode(f.ctx.decrypt(f.keys.sk, f.eval.rotate(cv, 1, f.keys.evk)));
  CHECK(max_abs_diff(ambfhe::oracles::rotate_left(v, 1), r1) < 1e-4);

  ChaChaRng rng(77);
  auto w = random_vec(rng, 8);
  Ciphertext cw = f.ctx.encrypt(f.keys.pk, f.ctx.encode(w));
  for (std::size_t k : {2, 3}) {
    auto rk = f.ctx.decode(f.ctx.decrypt(f.keys.sk, f.eval.rotate(cw, k, f.keys.evk)));
    CHECK(max_abs_diff(ambfhe::oracles::rotate_left(w, k), rk) < 1e-4);
  }

  // Group inverse: k then N/2-k.
  Ciphertext back = f.eval.rotate(f.eval.rotate(cw, 3, f.keys.evk), 5, f.keys.evk);
  CHECK(max_abs_diff(w, f.ctx.decode(f.ctx.decrypt(f.keys.sk, back))) < 1e-4);

  // Value preservation as a multiset.
  auto rot = f.ctx.decode(f.ctx.decrypt(f.keys.sk, f.eval.rotate(cw, 2, f.keys.evk)));
  auto sorted_w = w;
  std::sort(sorted_w.begin(), sorted_w.end());
  std::sort(rot.begin(), rot.end());
  CHECK(max_abs_diff(sorted_w, rot) < 1e-4);

  CHECK_THROWS_AS(f.eval.rotate(cw, 6, f.keys.evk), MissingGaloisKey);
}

TEST_CASE("homomorphism bounds hold on the big presets") {
  // Eq-style property at PN12QP109: random vectors, add within 1e-4 and
  // mul within 1e-3 in the infinity norm.
  CkksContext ctx(CkksParams::preset("PN12QP109"), 777);
  auto keys = ctx.keygen({});
  Evaluator eval(ctx);
  ChaChaRng rng(13);
  std::size_t slots = ctx.slot_count();
  auto u = random_vec(rng, slots);
  auto v = random_vec(rng, slots);
  Ciphertext cu = ctx.encrypt(keys.pk, ctx.encode(u));
  Ciphertext cv = ctx.encrypt(keys.pk, ctx.encode(v));

  auto sum = ctx.decode(ctx.decrypt(keys.sk, eval.add(cu, cv)));
  double maxadd = 0, maxmul = 0;
  auto prod = ctx.decode(ctx.decrypt(keys.sk, eval.mul(cu, cv, keys.evk)));
  for (std::size_t i = 0; i < slots; ++i) {
    maxadd = std::max(maxadd, std::abs(sum[i] - (u[i] + v[i])));
    maxmul = std::max(maxmul, std::abs(prod[i] - u[i] * v[i]));
  }
  CHECK(maxadd < 1e-4);
  CHECK(maxmul < 1e-3);
}
