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

#ifndef AMBFHE_CKKS_RNG_HPP_
#define AMBFHE_CKKS_RNG_HPP_

#include <array>
#include <cstdint>
#include <cstddef>

namespace ambfhe::ckks {

// ChaCha20-based deterministic generator. A fixed seed yields a fixed
// stream, which keeps key generation, encryption and the synthetic data
// generator reproducible under test.
class ChaChaRng {
 public:
  explicit ChaChaRng(std::uint64_t seed);

  // Fresh seed from the OS entropy source.
  static ChaChaRng from_entropy();

  std::uint64_t next_u64();

  // Uniform in [0, bound), bound > 0; rejection sampled.
  std::uint64_t uniform_below(std::uint64_t bound);

  // Uniform double in [0, 1).
  double uniform_double();

  // Centered Gaussian (Box-Muller).
  double normal(double sigma);

  // round(normal(sigma)) clamped to +-6 sigma.
  std::int64_t rounded_gaussian(double sigma);

  // Uniform over {-1, 0, 1}.
  std::int64_t ternary();

 private:
  void refill();

  std::array<std::uint32_t, 16> state_;
  std::array<std::uint32_t, 16> block_;
  std::size_t word_pos_ = 16;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ambfhe::ckks

#endif  // AMBFHE_CKKS_RNG_HPP_
