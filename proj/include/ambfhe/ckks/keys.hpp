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

#ifndef AMBFHE_CKKS_KEYS_HPP_
#define AMBFHE_CKKS_KEYS_HPP_

#include <cstdint>
#include <map>
#include <vector>

#include "ambfhe/ckks/ring.hpp"

namespace ambfhe::ckks {

// Ternary secret. Never serialized by protocol messages; the CLI key store
// persists it with a dedicated tag for the server role only.
struct SecretKey {
  RnsPoly s;  // NTT form, full chain + special row
};

struct PublicKey {
  RnsPoly b;  // -a*s + e, NTT form, top level, no special row
  RnsPoly a;
};

// One key-switch key: per chain prime j a pair (b_j, a_j) over Q*P with
// b_j = -a_j*s + e_j + (P mod q_j)*[row j]*s_tilde.
struct KeySwitchKey {
  std::vector<std::pair<RnsPoly, RnsPoly>> digits;  // (b, a), NTT form
};

struct GaloisKey {
  u64 step = 0;
  u64 galois_elt = 0;
  std::vector<std::uint32_t> perm;  // natural-order NTT index permutation
  KeySwitchKey ksk;
};

struct EvaluationKeys {
  KeySwitchKey relin;
  std::map<u64, GaloisKey> galois;  // keyed by rotation step

  bool has_step(u64 step) const { return galois.find(step) != galois.end(); }
};

struct KeyBundle {
  SecretKey sk;
  PublicKey pk;
  EvaluationKeys evk;
};

struct Plaintext {
  RnsPoly poly;  // NTT form
  double scale = 0.0;
  std::size_t level = 0;
};

struct Ciphertext {
  std::vector<RnsPoly> parts;  // 2, or 3 transiently before relinearization
  double scale = 0.0;
  std::size_t level = 0;
  std::size_t slot_count = 0;
};

}  // namespace ambfhe::ckks

#endif  // AMBFHE_CKKS_KEYS_HPP_
