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

#ifndef AMBFHE_CKKS_EVALUATOR_HPP_
#define AMBFHE_CKKS_EVALUATOR_HPP_

#include "ambfhe/ckks/context.hpp"

namespace ambfhe::ckks {

// Homomorphic operation tallies; drives the cost assertions and reports.
struct OpCounter {
  std::uint64_t ct_adds = 0;
  std::uint64_t ct_mults = 0;
  std::uint64_t pt_mults = 0;
  std::uint64_t rotations = 0;
  std::uint64_t rescales = 0;
  std::uint64_t relins = 0;
  std::uint64_t encryptions = 0;

  std::uint64_t homomorphic_total() const {
    return ct_adds + ct_mults + pt_mults + rotations;
  }
};

// Pure functions over immutable ciphertexts. An Evaluator instance only
// carries the context reference and an optional counter, so instances are
// cheap and safe to create per thread.
class Evaluator {
 public:
  explicit Evaluator(const CkksContext& ctx, OpCounter* counter = nullptr)
      : ctx_(ctx), counter_(counter) {}

  Ciphertext add(const Ciphertext& a, const Ciphertext& b) const;
  Ciphertext sub(const Ciphertext& a, const Ciphertext& b) const;
  Ciphertext negate(const Ciphertext& a) const;
  Ciphertext add_plain(const Ciphertext& a, const Plaintext& p) const;

  // Tensor product + relinearization + one rescale; level drops by one.
  Ciphertext mul(const Ciphertext& a, const Ciphertext& b,
                 const EvaluationKeys& evk) const;
  // Raw tensor product (3 parts, scale multiplied, no rescale). The
  // benchmark's Mul primitive; also what a forgotten relinearization
  // looks like to decrypt().
  Ciphertext mul_raw(const Ciphertext& a, const Ciphertext& b) const;
  Ciphertext relinearize(const Ciphertext& a, const EvaluationKeys& evk) const;
  Ciphertext mul_plain(const Ciphertext& a, const Plaintext& p) const;
  Ciphertext rescale(const Ciphertext& a) const;

  // Left cyclic slot rotation by k (mod N/2). k = 0 is the identity and
  // performs no homomorphic work.
  Ciphertext rotate(const Ciphertext& a, std::size_t k,
                    const EvaluationKeys& evk) const;

  OpCounter* counter() const { return counter_; }

 private:
  void check_binary(const Ciphertext& a, const Ciphertext& b) const;
  std::pair<RnsPoly, RnsPoly> key_switch(const RnsPoly& target,
                                         const KeySwitchKey& ksk) const;

  const CkksContext& ctx_;
  OpCounter* counter_;
};

}  // namespace ambfhe::ckks

#endif  // AMBFHE_CKKS_EVALUATOR_HPP_
