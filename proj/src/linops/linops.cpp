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

#include "ambfhe/linops/linops.hpp"

#include <stdexcept>

namespace ambfhe::linops {

void PackedLayout::validate() const {
  if (template_len == 0 || modality_count == 0)
    throw std::invalid_argument("layout dimensions must be positive");
  if ((template_len & (template_len - 1)) != 0)
    throw std::invalid_argument("template length must be a power of two");
  if (template_len * modality_count > slot_capacity)
    throw std::invalid_argument("m*d exceeds slot capacity");
}

std::vector<std::size_t> PackedLayout::required_rotation_steps() const {
  validate();
  std::vector<std::size_t> steps;
  for (std::size_t k = 1; k < slot_capacity; k <<= 1) steps.push_back(k);
  bool has_d = false;
  for (std::size_t k : steps) has_d |= (k == template_len);
  if (!has_d) steps.push_back(template_len);
  return steps;
}

Ciphertext rotate_and_sum_all(const Evaluator& eval, const Ciphertext& ct,
                              const EvaluationKeys& evk) {
  Ciphertext acc = ct;
  for (std::size_t k = 1; k < ct.slot_count; k <<= 1)
    acc = eval.add(acc, eval.rotate(acc, k, evk));
  return acc;
}

Ciphertext rotate_and_sum_block(const Evaluator& eval, const Ciphertext& ct,
                                std::size_t block_len, const EvaluationKeys& evk) {
  if (block_len == 0 || (block_len & (block_len - 1)) != 0)
    throw std::invalid_argument("block length must be a power of two");
  if (block_len > ct.slot_count)
    throw std::invalid_argument("block exceeds slot count");
  Ciphertext acc = ct;
  for (std::size_t k = 1; k < block_len; k <<= 1)
    acc = eval.add(acc, eval.rotate(acc, k, evk));
  return acc;
}

Ciphertext inner_product(const Evaluator& eval, const Ciphertext& a,
                         const Ciphertext& b, const EvaluationKeys& evk) {
  return rotate_and_sum_all(eval, eval.mul(a, b, evk), evk);
}

Ciphertext block_align(const Evaluator& eval, const Ciphertext& aligned_prev,
                       std::size_t stage, const PackedLayout& layout,
                       const EvaluationKeys& evk) {
  layout.validate();
  if (stage == 0 || stage > layout.modality_count)
    throw std::invalid_argument("stage out of range");
  if (stage == 1) return aligned_prev;
  return eval.rotate(aligned_prev, layout.template_len, evk);
}

Ciphertext accumulate_score(const Evaluator& eval,
                            const std::optional<Ciphertext>& delta,
                            const Ciphertext& stage_ip) {
  if (!delta.has_value()) return stage_ip;
  return eval.add(*delta, stage_ip);
}

}  // namespace ambfhe::linops
