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

#ifndef AMBFHE_CKKS_CONTEXT_HPP_
#define AMBFHE_CKKS_CONTEXT_HPP_

#include <mutex>
#include <optional>
#include <span>
#include <vector>

#include "ambfhe/ckks/encoder.hpp"
#include "ambfhe/ckks/errors.hpp"
#include "ambfhe/ckks/keys.hpp"
#include "ambfhe/ckks/params.hpp"
#include "ambfhe/ckks/ring.hpp"
#include "ambfhe/ckks/rng.hpp"

namespace ambfhe::ckks {

constexpr double kErrorStdDev = 3.2;

// Parameter-bound frontend: key generation, encoding and en/decryption.
// Keys, plaintexts and ciphertexts are immutable values; the only mutable
// state is the RNG, which is seed-injectable and mutex guarded.
class CkksContext {
 public:
  explicit CkksContext(CkksParams params,
                       std::optional<std::uint64_t> seed = std::nullopt);

  const CkksParams& params() const { return params_; }
  const Ring& ring() const { return ring_; }
  const Encoder& encoder() const { return encoder_; }
  std::size_t slot_count() const { return params_.slot_count(); }
  std::size_t top_level() const { return params_.top_level(); }
  double default_scale() const { return params_.scale; }

  // rotation_steps in [1, N/2-1]; Galois keys are generated for exactly the
  // requested steps, nothing else.
  KeyBundle keygen(const std::vector<std::size_t>& rotation_steps);

  Plaintext encode(std::span<const double> values, double scale,
                   std::size_t level) const;
  Plaintext encode(std::span<const double> values) const;
  std::vector<double> decode(const Plaintext& pt) const;

  Ciphertext encrypt(const PublicKey& pk, const Plaintext& pt);
  Plaintext decrypt(const SecretKey& sk, const Ciphertext& ct) const;

 private:
  RnsPoly sample_error_poly(std::size_t level, bool with_special);
  KeySwitchKey make_ksk(const RnsPoly& s_tilde, const SecretKey& sk);

  CkksParams params_;
  Ring ring_;
  Encoder encoder_;
  mutable std::mutex rng_mutex_;
  ChaChaRng rng_;
};

}  // namespace ambfhe::ckks

#endif  // AMBFHE_CKKS_CONTEXT_HPP_
