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

#ifndef AMBFHE_CKKS_NTT_HPP_
#define AMBFHE_CKKS_NTT_HPP_

#include <cstddef>
#include <vector>

#include "ambfhe/ckks/modmath.hpp"

namespace ambfhe::ckks {

// Negacyclic number-theoretic transform over Z_q[X]/(X^n + 1).
//
// forward() maps coefficients a_0..a_{n-1} to evaluations at the odd powers
// of a primitive 2n-th root of unity psi, in natural order:
//   A[i] = a(psi^(2i+1)),  i = 0..n-1.
// Natural ordering keeps Galois automorphisms a pure index permutation:
//   (a o g)(psi^(2i+1)) = A[((2i+1)*g mod 2n - 1) / 2].
class NttTable {
 public:
  // q prime, q = 1 (mod 2n), n a power of two.
  NttTable(u64 q, std::size_t n);

  void forward(u64* a) const;
  void inverse(u64* a) const;

  u64 prime() const { return q_; }
  std::size_t size() const { return n_; }
  u64 psi() const { return psi_; }

 private:
  u64 q_ = 0;
  std::size_t n_ = 0;
  std::size_t log_n_ = 0;
  u64 psi_ = 0;

  // Twist by psi^j / psi^-j (the inverse table folds in 1/n).
  std::vector<u64> twist_, twist_shoup_;
  std::vector<u64> untwist_, untwist_shoup_;
  // Cyclic FFT twiddles over omega = psi^2; tw_[m/2 + j] = omega^{(n/m) j}.
  std::vector<u64> tw_, tw_shoup_;
  std::vector<u64> itw_, itw_shoup_;
  std::vector<std::uint32_t> bit_rev_;

  void fft(u64* a, const std::vector<u64>& tw,
           const std::vector<u64>& tw_shoup) const;
};

// Primitive 2n-th root of unity mod q (q prime, 2n | q-1).
u64 find_primitive_2nth_root(u64 q, std::size_t n);

// Distinct NTT-friendly primes (p = 1 mod 2n) of the requested bit sizes,
// chosen nearest below 2^bits, skipping any prime already in `taken`.
std::vector<u64> find_ntt_primes(std::size_t n, const std::vector<int>& bits,
                                 std::vector<u64> taken = {});

}  // namespace ambfhe::ckks

#endif  // AMBFHE_CKKS_NTT_HPP_
