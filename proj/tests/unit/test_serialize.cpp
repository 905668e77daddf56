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

#include "ambfhe/ckks/evaluator.hpp"
#include "ambfhe/ckks/serialize.hpp"
#include "doctest.h"

using namespace ambfhe::ckks;

TEST_CASE("objects round-trip bit-exactly and deterministically") {
  CkksContext ctx(CkksParams::preset("toy-n16"), 4242);
  auto keys = ctx.keygen({1, 2});

  auto params_bytes = serialize(ctx.params());
  CHECK(params_bytes == serialize(ctx.params()));  // deterministic
  CkksParams p2 = deserialize_params(params_bytes);
  CHECK(p2 == ctx.params());

  auto pk_bytes = serialize(keys.pk);
  PublicKey pk2 = deserialize_public_key(pk_bytes, ctx);
  CHECK(serialize(pk2) == pk_bytes);

  auto evk_bytes = serialize(keys.evk);
  EvaluationKeys evk2 = deserialize_evaluation_keys(evk_bytes, ctx);
  CHECK(serialize(evk2) == evk_bytes);
  CHECK(evk2.galois.at(1).perm == keys.evk.galois.at(1).perm);

  std::vector<double> v = {0.5, -0.25, 0.125};
  Plaintext pt = ctx.encode(v);
  auto pt_bytes = serialize(pt);
  Plaintext pt2 = deserialize_plaintext(pt_bytes, ctx);
  CHECK(serialize(pt2) == pt_bytes);

  Ciphertext ct = ctx.encrypt(keys.pk, pt);
  auto ct_bytes = serialize(ct);
  Ciphertext ct2 = deserialize_ciphertext(ct_bytes, ctx);
  CHECK(serialize(ct2) == ct_bytes);

  // Deserialized material still works end to end.
  auto back = ctx.decode(ctx.decrypt(keys.sk, ct2));
  CHECK(std::abs(back[0] - 0.5) < 1e-6);

  auto sk_bytes = serialize(keys.sk);
  SecretKey sk2 = deserialize_secret_key(sk_bytes, ctx);
  CHECK(serialize(sk2) == sk_bytes);
}

TEST_CASE("malformed object bytes are rejected") {
  CkksContext ctx(CkksParams::preset("toy-n16"), 7);
  auto keys = ctx.keygen({});
  auto bytes = serialize(keys.pk);

  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  CHECK_THROWS_AS(deserialize_public_key(bad_magic, ctx), SerializeError);

  auto bad_version = bytes;
  bad_version[4] = 0xff;
  CHECK_THROWS_AS(deserialize_public_key(bad_version, ctx), SerializeError);

  auto bad_tag = bytes;
  bad_tag[6] = 42;
  CHECK_THROWS_AS(deserialize_public_key(bad_tag, ctx), SerializeError);

  auto truncated = bytes;
  truncated.resize(truncated.size() / 2);
  CHECK_THROWS_AS(deserialize_public_key(truncated, ctx), SerializeError);

  auto trailing = bytes;
  trailing.push_back(0);
  CHECK_THROWS_AS(deserialize_public_key(trailing, ctx), SerializeError);

  // Wrong object type for the deserializer in use.
  CHECK_THROWS_AS(deserialize_ciphertext(bytes, ctx), SerializeError);
}
