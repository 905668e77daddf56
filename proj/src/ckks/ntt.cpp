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

#include "ambfhe/ckks/ntt.hpp"

#include <bit>
#include <stdexcept>

namespace ambfhe::ckks {

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  // Deterministic witness set for 64-bit integers.
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL,
                29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 0; i < r - 1; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 find_primitive_2nth_root(u64 q, std::size_t n) {
  u64 order = 2 * static_cast<u64>(n);
  if ((q - 1) % order != 0) throw std::invalid_argument("q != 1 mod 2n");
  u64 cofactor = (q - 1) / order;
  for (u64 h = 2;; ++h) {
    u64 psi = pow_mod(h, cofactor, q);
    // psi has order dividing 2n; it is primitive iff psi^n = -1.
    if (pow_mod(psi, n, q) == q - 1) return psi;
  }
}

std::vector<u64> find_ntt_primes(std::size_t n, const std::vector<int>& bits,
                                 std::vector<u64> taken) {
  std::vector<u64> out;
  u64 step = 2 * static_cast<u64>(n);
  for (int b : bits) {
    if (b < 4 || b > 59) throw std::invalid_argument("prime size out of range");
    u64 top = (1ULL << b) - 1;
    u64 candidate = top - ((top - 1) % step);  // largest = 1 mod 2n below 2^b
    for (;; candidate -= step) {
      if (candidate <= step) throw std::runtime_error("prime search exhausted");
      bool used = false;
      for (u64 t : taken) used |= (t == candidate);
      if (!used && is_prime(candidate)) break;
    }
    taken.push_back(candidate);
    out.push_back(candidate);
  }
  return out;
}

NttTable::NttTable(u64 q, std::size_t n) : q_(q), n_(n) {
  if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("n not a power of two");
  if (!is_prime(q) || (q - 1) % (2 * n) != 0)
    throw std::invalid_argument("q not an NTT prime for this n");
  log_n_ = static_cast<std::size_t>(std::countr_zero(n));
  psi_ = find_primitive_2nth_root(q, n);

  u64 omega = mul_mod(psi_, psi_, q);
  u64 psi_inv = inv_mod(psi_, q);
  u64 omega_inv = inv_mod(omega, q);
  u64 n_inv = inv_mod(static_cast<u64>(n), q);

  twist_.resize(n);
  untwist_.resize(n);
  u64 t = 1, ti = n_inv;
  for (std::size_t j = 0; j < n; ++j) {
    twist_[j] = t;
    untwist_[j] = ti;  // psi^-j / n
    t = mul_mod(t, psi_, q);
    ti = mul_mod(ti, psi_inv, q);
  }

  tw_.resize(n);
  itw_.resize(n);
  tw_[0] = itw_[0] = 1;
  for (std::size_t m = 2; m <= n; m <<= 1) {
    u64 wm = pow_mod(omega, static_cast<u64>(n / m), q);
    u64 wmi = pow_mod(omega_inv, static_cast<u64>(n / m), q);
    u64 w = 1, wi = 1;
    for (std::size_t j = 0; j < m / 2; ++j) {
      tw_[m / 2 + j] = w;
      itw_[m / 2 + j] = wi;
      w = mul_mod(w, wm, q);
      wi = mul_mod(wi, wmi, q);
    }
  }

  auto shoup_all = [q](const std::vector<u64>& src) {
    std::vector<u64> dst(src.size());
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = shoup_precompute(src[i], q);
    return dst;
  };
  twist_shoup_ = shoup_all(twist_);
  untwist_shoup_ = shoup_all(untwist_);
  tw_shoup_ = shoup_all(tw_);
  itw_shoup_ = shoup_all(itw_);

  bit_rev_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t r = 0;
    for (std::size_t b = 0; b < log_n_; ++b) r |= ((i >> b) & 1u) << (log_n_ - 1 - b);
    bit_rev_[i] = r;
  }
}

void NttTable::fft(u64* a, const std::vector<u64>& tw,
                   const std::vector<u64>& tw_shoup) const {
  for (std::size_t i = 0; i < n_; ++i) {
    std::uint32_t j = bit_rev_[i];
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t m = 2; m <= n_; m <<= 1) {
    std::size_t half = m / 2;
    for (std::size_t base = 0; base < n_; base += m) {
      for (std::size_t j = 0; j < half; ++j) {
        u64 w = tw[half + j];
        u64 ws = tw_shoup[half + j];
        u64 u = a[base + j];
        u64 v = mul_mod_shoup(a[base + j + half], w, ws, q_);
        a[base + j] = add_mod(u, v, q_);
        a[base + j + half] = sub_mod(u, v, q_);
      }
    }
  }
}

void NttTable::forward(u64* a) const {
  for (std::size_t j = 0; j < n_; ++j)
    a[j] = mul_mod_shoup(a[j], twist_[j], twist_shoup_[j], q_);
  fft(a, tw_, tw_shoup_);
}

void NttTable::inverse(u64* a) const {
  fft(a, itw_, itw_shoup_);
  for (std::size_t j = 0; j < n_; ++j)
    a[j] = mul_mod_shoup(a[j], untwist_[j], untwist_shoup_[j], q_);
}

}  // namespace ambfhe::ckks
