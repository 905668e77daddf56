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

#ifndef AMBFHE_CKKS_PARAMS_HPP_
#define AMBFHE_CKKS_PARAMS_HPP_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ambfhe/ckks/modmath.hpp"

namespace ambfhe::ckks {

// Leveled CKKS parameter set.
//
// modulus_chain holds q_0..q_L (q_0 is the decryption base, the rest are
// rescaling primes near the scale). special_prime is the key-switching
// auxiliary modulus P; ciphertexts never live mod P, only key-switch keys do.
struct CkksParams {
  std::string preset_name;
  std::size_t ring_dim = 0;           // N, power of two
  std::vector<u64> modulus_chain;     // q_0 .. q_L
  u64 special_prime = 0;              // P >= max(q_i)
  double scale = 0.0;                 // encoding scale, default 2^40
  int security_bits = 0;              // informational only

  // Named presets:
  //   "PN12QP109"  N=4096, chain bits {58,40,40}, P 58 bits, scale 2^40
  //   "PN13QP218"  N=8192, chain bits {58,40,40,40}, P 58 bits, scale 2^40
  //   "toy-n16"    N=16, same chain shape; insecure, for tests only
  static CkksParams preset(std::string_view name);

  static CkksParams custom(std::size_t ring_dim, const std::vector<int>& chain_bits,
                           int special_bits, double scale);

  std::size_t slot_count() const { return ring_dim / 2; }
  std::size_t top_level() const { return modulus_chain.size() - 1; }
  bool insecure() const { return security_bits <= 0; }

  // Throws std::invalid_argument when the invariants do not hold.
  void validate() const;

  bool operator==(const CkksParams&) const = default;
};

}  // namespace ambfhe::ckks

#endif  // AMBFHE_CKKS_PARAMS_HPP_
