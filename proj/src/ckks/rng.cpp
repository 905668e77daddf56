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

#include "ambfhe/ckks/rng.hpp"

#include <cmath>
#include <random>

namespace ambfhe::ckks {

namespace {

inline std::uint32_t rotl32(std::uint32_t x, int n) {
  return (x << n) | (x >> (32 - n));
}

inline void quarter_round(std::uint32_t& a, std::uint32_t& b, std::uint32_t& c,
                          std::uint32_t& d) {
  a += b; d ^= a; d = rotl32(d, 16);
  c += d; b ^= c; b = rotl32(b, 12);
  a += b; d ^= a; d = rotl32(d, 8);
  c += d; b ^= c; b = rotl32(b, 7);
}

// splitmix64, used only to expand the 64-bit seed into a 256-bit key.
inline std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

ChaChaRng::ChaChaRng(std::uint64_t seed) {
  static constexpr std::uint32_t kSigma[4] = {0x61707865, 0x3320646e,
                                              0x79622d32, 0x6b206574};
  state_[0] = kSigma[0];
  state_[1] = kSigma[1];
  state_[2] = kSigma[2];
  state_[3] = kSigma[3];
  std::uint64_t s = seed;
  for (int i = 0; i < 4; ++i) {
    std::uint64_t k = splitmix64(s);
    state_[4 + 2 * i] = static_cast<std::uint32_t>(k);
    state_[5 + 2 * i] = static_cast<std::uint32_t>(k >> 32);
  }
  state_[12] = 0;  // block counter
  state_[13] = 0;
  state_[14] = 0x616d6266;  // nonce "ambf"
  state_[15] = 0x68650001;  // nonce "he",v1
}

ChaChaRng ChaChaRng::from_entropy() {
  std::random_device rd;
  std::uint64_t seed =
      (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
  return ChaChaRng(seed);
}

void ChaChaRng::refill() {
  std::array<std::uint32_t, 16> x = state_;
  for (int round = 0; round < 10; ++round) {
    quarter_round(x[0], x[4], x[8], x[12]);
    quarter_round(x[1], x[5], x[9], x[13]);
    quarter_round(x[2], x[6], x[10], x[14]);
    quarter_round(x[3], x[7], x[11], x[15]);
    quarter_round(x[0], x[5], x[10], x[15]);
    quarter_round(x[1], x[6], x[11], x[12]);
    quarter_round(x[2], x[7], x[8], x[13]);
    quarter_round(x[3], x[4], x[9], x[14]);
  }
  for (int i = 0; i < 16; ++i) block_[i] = x[i] + state_[i];
  if (++state_[12] == 0) ++state_[13];
  word_pos_ = 0;
}

std::uint64_t ChaChaRng::next_u64() {
  if (word_pos_ + 2 > 16) refill();
  std::uint64_t lo = block_[word_pos_];
  std::uint64_t hi = block_[word_pos_ + 1];
  word_pos_ += 2;
  return (hi << 32) | lo;
}

std::uint64_t ChaChaRng::uniform_below(std::uint64_t bound) {
  // Rejection sampling over the largest multiple of bound.
  std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    std::uint64_t r = next_u64();
    if (r >= threshold) return r % bound;
  }
}

double ChaChaRng::uniform_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double ChaChaRng::normal(double sigma) {
  if (has_spare_) {
    has_spare_ = false;
    return spare_ * sigma;
  }
  double u1, u2;
  do {
    u1 = uniform_double();
  } while (u1 <= 0.0);
  u2 = uniform_double();
  double mag = std::sqrt(-2.0 * std::log(u1));
  spare_ = mag * std::sin(2.0 * M_PI * u2);
  has_spare_ = true;
  return mag * std::cos(2.0 * M_PI * u2) * sigma;
}

std::int64_t ChaChaRng::rounded_gaussian(double sigma) {
  double v = normal(sigma);
  double cap = 6.0 * sigma;
  if (v > cap) v = cap;
  if (v < -cap) v = -cap;
  return std::llround(v);
}

std::int64_t ChaChaRng::ternary() {
  return static_cast<std::int64_t>(uniform_below(3)) - 1;
}

}  // namespace ambfhe::ckks
