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

#ifndef AMBFHE_CKKS_SERIALIZE_HPP_
#define AMBFHE_CKKS_SERIALIZE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "ambfhe/ckks/context.hpp"

namespace ambfhe::ckks {

// Versioned binary object format:
//   magic "AFHE" | version u16 LE | object tag u8 | body
// Bodies are little-endian u64 lengths followed by raw little-endian u64
// residue arrays; encoding is deterministic (same object => same bytes).
inline constexpr char kSerialMagic[4] = {'A', 'F', 'H', 'E'};
inline constexpr std::uint16_t kSerialVersion = 1;

enum class ObjectTag : std::uint8_t {
  kParams = 1,
  kPublicKey = 2,
  kEvaluationKeys = 3,
  kPlaintext = 4,
  kCiphertext = 5,
  kSecretKey = 6,  // CLI key store only; never carried by protocol messages
};

struct SerializeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> serialize(const CkksParams& params);
std::vector<std::uint8_t> serialize(const PublicKey& pk);
std::vector<std::uint8_t> serialize(const EvaluationKeys& evk);
std::vector<std::uint8_t> serialize(const Plaintext& pt);
std::vector<std::uint8_t> serialize(const Ciphertext& ct);
std::vector<std::uint8_t> serialize(const SecretKey& sk);

CkksParams deserialize_params(std::span<const std::uint8_t> bytes);
PublicKey deserialize_public_key(std::span<const std::uint8_t> bytes,
                                 const CkksContext& ctx);
EvaluationKeys deserialize_evaluation_keys(std::span<const std::uint8_t> bytes,
                                           const CkksContext& ctx);
Plaintext deserialize_plaintext(std::span<const std::uint8_t> bytes,
                                const CkksContext& ctx);
Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes,
                                  const CkksContext& ctx);
SecretKey deserialize_secret_key(std::span<const std::uint8_t> bytes,
                                 const CkksContext& ctx);

}  // namespace ambfhe::ckks

#endif  // AMBFHE_CKKS_SERIALIZE_HPP_
