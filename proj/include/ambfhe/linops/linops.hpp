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

#ifndef AMBFHE_LINOPS_LINOPS_HPP_
#define AMBFHE_LINOPS_LINOPS_HPP_

#include <optional>

#include "ambfhe/ckks/evaluator.hpp"

namespace ambfhe::linops {

using ckks::Ciphertext;
using ckks::EvaluationKeys;
using ckks::Evaluator;

// Slot layout of a concatenated multi-modal reference: modality j (1-based)
// occupies slots [(j-1)*d, j*d); everything above m*d stays zero.
struct PackedLayout {
  std::size_t template_len = 0;   // d
  std::size_t modality_count = 0; // m
  std::size_t slot_capacity = 0;  // N/2

  void validate() const;

  // Galois steps the packed pipeline needs: powers of two for the fold
  // plus the block-alignment step d.
  std::vector<std::size_t> required_rotation_steps() const;
};

// Replicated slot sum: ct <- sum over all N/2 slots, every slot holding the
// total. log2(N/2) rotations, log2(N/2) additions.
Ciphertext rotate_and_sum_all(const Evaluator& eval, const Ciphertext& ct,
                              const EvaluationKeys& evk);

// Partial fold over a power-of-two block [0, block_len): slot 0 ends up with
// the block sum. log2(block_len) rotations. Valid when all slots outside
// [0, block_len) are zero.
Ciphertext rotate_and_sum_block(const Evaluator& eval, const Ciphertext& ct,
                                std::size_t block_len, const EvaluationKeys& evk);

// Encrypted inner product: one ciphertext multiplication followed by the
// full-ring rotate-and-sum. Every slot of the result carries <a, b>.
Ciphertext inner_product(const Evaluator& eval, const Ciphertext& a,
                         const Ciphertext& b, const EvaluationKeys& evk);

// Bring the reference block for stage j (1-based) to slots [0, d).
// Stage 1 is the identity; each later stage rotates the previously aligned
// reference left by d.
Ciphertext block_align(const Evaluator& eval, const Ciphertext& aligned_prev,
                       std::size_t stage, const PackedLayout& layout,
                       const EvaluationKeys& evk);

// Running encrypted sum of per-stage inner products.
Ciphertext accumulate_score(const Evaluator& eval,
                            const std::optional<Ciphertext>& delta,
                            const Ciphertext& stage_ip);

}  // namespace ambfhe::linops

#endif  // AMBFHE_LINOPS_LINOPS_HPP_
