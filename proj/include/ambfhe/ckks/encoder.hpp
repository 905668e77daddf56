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

#ifndef AMBFHE_CKKS_ENCODER_HPP_
#define AMBFHE_CKKS_ENCODER_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace ambfhe::ckks {

// Canonical embedding for the ring R = Z[X]/(X^N + 1).
//
// Slot k corresponds to evaluation at zeta^{5^k mod 2N} with
// zeta = exp(i*pi/N); the conjugate half is implicit, so N/2 slots carry
// independent values and a rotation by one step is the Galois automorphism
// X -> X^5.
class Encoder {
 public:
  explicit Encoder(std::size_t ring_dim);

  std::size_t slot_count() const { return slots_; }

  // Real slot values (zero padded to N/2) -> embedding preimage: N real
  // coefficients, unscaled.
  std::vector<long double> slots_to_coeffs(std::span<const double> slots) const;

  // N coefficients -> slot values (real parts; imaginary parts are encoding
  // noise for real inputs).
  std::vector<double> coeffs_to_slots(std::span<const long double> coeffs) const;

 private:
  std::size_t n_;      // ring dimension N
  std::size_t slots_;  // N/2
  std::vector<std::size_t> rot_group_;          // 5^k mod 2N
  std::vector<std::complex<double>> roots_;     // zeta^j, j < 2N
  std::vector<std::uint32_t> bit_rev_;          // over N/2 points

  void fft_special(std::vector<std::complex<double>>& v) const;      // decode
  void fft_special_inv(std::vector<std::complex<double>>& v) const;  // encode
};

}  // namespace ambfhe::ckks

#endif  // AMBFHE_CKKS_ENCODER_HPP_
