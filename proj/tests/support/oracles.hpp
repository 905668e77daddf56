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

// Test-only reference implementations. Everything here is written the slow,
// obvious way and stays independent of the library's computation paths.

#ifndef AMBFHE_TESTS_SUPPORT_ORACLES_HPP_
#define AMBFHE_TESTS_SUPPORT_ORACLES_HPP_

#include <complex>
#include <cstdint>
#include <vector>

namespace ambfhe::oracles {

// Schoolbook negacyclic product in Z_q[X]/(X^n+1).
inline std::vector<std::uint64_t> negacyclic_mul(
    const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
    std::uint64_t q) {
  std::size_t n = a.size();
  std::vector<std::uint64_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      unsigned __int128 prod =
          static_cast<unsigned __int128>(a[i]) * b[j] % q;
      std::size_t k = i + j;
      if (k < n) {
        out[k] = (out[k] + static_cast<std::uint64_t>(prod)) % q;
      } else {
        std::uint64_t p = static_cast<std::uint64_t>(prod);
        out[k - n] = (out[k - n] + q - p) % q;
      }
    }
  }
  return out;
}

// Direct canonical-embedding evaluation: slot k of the coefficient vector m
// is m(zeta^{5^k mod 2n}) with zeta = exp(i*pi/n), n the ring dimension.
inline std::vector<std::complex<double>> embed_direct(
    const std::vector<long double>& coeffs) {
  std::size_t n = coeffs.size();
  std::size_t two_n = 2 * n;
  std::size_t slots = n / 2;
  std::vector<std::complex<double>> out(slots);
  std::size_t g = 1;
  for (std::size_t k = 0; k < slots; ++k) {
    std::complex<long double> acc = 0;
    for (std::size_t j = 0; j < n; ++j) {
      long double theta =
          static_cast<long double>(M_PI) * static_cast<long double>((g * j) % two_n) /
          static_cast<long double>(n);
      acc += coeffs[j] * std::complex<long double>(std::cos(theta), std::sin(theta));
    }
    out[k] = {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
    g = (g * 5) % two_n;
  }
  return out;
}

// Plain dot product.
inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

// Left cyclic rotation.
inline std::vector<double> rotate_left(const std::vector<double>& v, std::size_t k) {
  std::size_t n = v.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = v[(i + k) % n];
  return out;
}

// Brute-force sequential cascade over plaintext blocks: cumulative inner
// product, delta_j = 2j - 2s, strict accept, reject only after the last
// stage.
struct CascadeResult {
  bool accepted = false;
  std::size_t stages_used = 0;
  std::vector<double> deltas;
};

inline CascadeResult plain_cascade(
    const std::vector<std::vector<double>>& ref_blocks,
    const std::vector<std::vector<double>>& probe_blocks,
    const std::vector<double>& thresholds) {
  CascadeResult r;
  double s = 0.0;
  for (std::size_t j = 0; j < thresholds.size(); ++j) {
    s += dot(ref_blocks[j], probe_blocks[j]);
    double delta = 2.0 * static_cast<double>(j + 1) - 2.0 * s;
    r.deltas.push_back(delta);
    r.stages_used = j + 1;
    if (delta < thresholds[j]) {
      r.accepted = true;
      return r;
    }
  }
  r.accepted = false;
  return r;
}

}  // namespace ambfhe::oracles

#endif  // AMBFHE_TESTS_SUPPORT_ORACLES_HPP_
