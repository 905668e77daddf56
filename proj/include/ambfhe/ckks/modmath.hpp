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

#ifndef AMBFHE_CKKS_MODMATH_HPP_
#define AMBFHE_CKKS_MODMATH_HPP_

#include <cstdint>

namespace ambfhe::ckks {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// All moduli in this library are primes below 2^59, so a + b never wraps.
inline u64 add_mod(u64 a, u64 b, u64 q) {
  u64 s = a + b;
  return s >= q ? s - q : s;
}

inline u64 sub_mod(u64 a, u64 b, u64 q) { return a >= b ? a - b : a + q - b; }

inline u64 neg_mod(u64 a, u64 q) { return a == 0 ? 0 : q - a; }

inline u64 mul_mod(u64 a, u64 b, u64 q) {
  return static_cast<u64>(static_cast<u128>(a) * b % q);
}

inline u64 pow_mod(u64 base, u64 exp, u64 q) {
  u64 r = 1;
  base %= q;
  while (exp > 0) {
    if (exp & 1) r = mul_mod(r, base, q);
    base = mul_mod(base, base, q);
    exp >>= 1;
  }
  return r;
}

// q must be prime.
inline u64 inv_mod(u64 a, u64 q) { return pow_mod(a, q - 2, q); }

// Shoup multiplication: for a fixed multiplier w, precompute
// w' = floor(w * 2^64 / q); then a*w mod q costs one high-half product.
inline u64 shoup_precompute(u64 w, u64 q) {
  return static_cast<u64>((static_cast<u128>(w) << 64) / q);
}

inline u64 mul_mod_shoup(u64 a, u64 w, u64 w_shoup, u64 q) {
  u64 hi = static_cast<u64>((static_cast<u128>(a) * w_shoup) >> 64);
  u64 r = a * w - hi * q;  // in [0, 2q)
  return r >= q ? r - q : r;
}

// Deterministic Miller-Rabin, valid for all n < 2^64.
bool is_prime(u64 n);

// Centered representative of x mod q, in (-q/2, q/2].
inline i64 center(u64 x, u64 q) {
  return x > q / 2 ? static_cast<i64>(x) - static_cast<i64>(q)
                   : static_cast<i64>(x);
}

// Residue of a signed value.
inline u64 reduce_signed(i64 v, u64 q) {
  i64 r = v % static_cast<i64>(q);
  return r < 0 ? static_cast<u64>(r + static_cast<i64>(q)) : static_cast<u64>(r);
}

}  // namespace ambfhe::ckks

#endif  // AMBFHE_CKKS_MODMATH_HPP_
