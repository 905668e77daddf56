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

#include "ambfhe/ckks/encoder.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace ambfhe::ckks {

Encoder::Encoder(std::size_t ring_dim) : n_(ring_dim), slots_(ring_dim / 2) {
  if (n_ < 4 || (n_ & (n_ - 1)) != 0)
    throw std::invalid_argument("ring dimension must be a power of two >= 4");
  std::size_t two_n = 2 * n_;
  rot_group_.resize(slots_);
  std::size_t g = 1;
  for (std::size_t k = 0; k < slots_; ++k) {
    rot_group_[k] = g;
    g = (g * 5) % two_n;
  }
  roots_.resize(two_n);
  for (std::size_t j = 0; j < two_n; ++j) {
    double theta = M_PI * static_cast<double>(j) / static_cast<double>(n_);
    roots_[j] = {std::cos(theta), std::sin(theta)};
  }
  std::size_t log_slots = static_cast<std::size_t>(std::countr_zero(slots_));
  bit_rev_.resize(slots_);
  for (std::size_t i = 0; i < slots_; ++i) {
    std::uint32_t r = 0;
    for (std::size_t b = 0; b < log_slots; ++b)
      r |= ((i >> b) & 1u) << (log_slots - 1 - b);
    bit_rev_[i] = r;
  }
}

void Encoder::fft_special(std::vector<std::complex<double>>& v) const {
  std::size_t nn = v.size();
  std::size_t two_n = 2 * n_;
  for (std::size_t i = 0; i < nn; ++i) {
    std::uint32_t j = bit_rev_[i];
    if (i < j) std::swap(v[i], v[j]);
  }
  for (std::size_t len = 2; len <= nn; len <<= 1) {
    std::size_t half = len >> 1;
    std::size_t quad = len << 2;
    std::size_t gap = two_n / quad;
    for (std::size_t base = 0; base < nn; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::size_t idx = (rot_group_[j] % quad) * gap;
        std::complex<double> u = v[base + j];
        std::complex<double> w = v[base + j + half] * roots_[idx];
        v[base + j] = u + w;
        v[base + j + half] = u - w;
      }
    }
  }
}

void Encoder::fft_special_inv(std::vector<std::complex<double>>& v) const {
  std::size_t nn = v.size();
  std::size_t two_n = 2 * n_;
  for (std::size_t len = nn; len >= 2; len >>= 1) {
    std::size_t half = len >> 1;
    std::size_t quad = len << 2;
    std::size_t gap = two_n / quad;
    for (std::size_t base = 0; base < nn; base += len) {
      for (std::size_t j = 0; j < half; ++j) {
        std::size_t idx = (quad - (rot_group_[j] % quad)) * gap;
        std::complex<double> u = v[base + j] + v[base + j + half];
        std::complex<double> w = (v[base + j] - v[base + j + half]) * roots_[idx];
        v[base + j] = u;
        v[base + j + half] = w;
      }
    }
  }
  for (std::size_t i = 0; i < nn; ++i) {
    std::uint32_t j = bit_rev_[i];
    if (i < j) std::swap(v[i], v[j]);
  }
  double inv = 1.0 / static_cast<double>(nn);
  for (auto& x : v) x *= inv;
}

std::vector<long double> Encoder::slots_to_coeffs(
    std::span<const double> slots) const {
  if (slots.size() > slots_) throw std::invalid_argument("too many slot values");
  for (double x : slots)
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite slot value");
  std::vector<std::complex<double>> v(slots_, {0.0, 0.0});
  for (std::size_t i = 0; i < slots.size(); ++i) v[i] = {slots[i], 0.0};
  fft_special_inv(v);
  std::vector<long double> coeffs(n_);
  for (std::size_t i = 0; i < slots_; ++i) {
    coeffs[i] = static_cast<long double>(v[i].real());
    coeffs[i + slots_] = static_cast<long double>(v[i].imag());
  }
  return coeffs;
}

std::vector<double> Encoder::coeffs_to_slots(
    std::span<const long double> coeffs) const {
  if (coeffs.size() != n_) throw std::invalid_argument("coefficient count mismatch");
  std::vector<std::complex<double>> v(slots_);
  for (std::size_t i = 0; i < slots_; ++i)
    v[i] = {static_cast<double>(coeffs[i]), static_cast<double>(coeffs[i + slots_])};
  fft_special(v);
  std::vector<double> out(slots_);
  for (std::size_t i = 0; i < slots_; ++i) out[i] = v[i].real();
  return out;
}

}  // namespace ambfhe::ckks
