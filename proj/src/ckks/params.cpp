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

#include "ambfhe/ckks/params.hpp"

#include <cmath>
#include <stdexcept>

#include "ambfhe/ckks/ntt.hpp"

namespace ambfhe::ckks {

CkksParams CkksParams::custom(std::size_t ring_dim,
                              const std::vector<int>& chain_bits,
                              int special_bits, double scale) {
  CkksParams p;
  p.ring_dim = ring_dim;
  p.scale = scale;
  // The special prime takes the largest candidate of its size so that it
  // dominates every chain prime.
  p.special_prime = find_ntt_primes(ring_dim, {special_bits})[0];
  p.modulus_chain = find_ntt_primes(ring_dim, chain_bits, {p.special_prime});
  p.validate();
  return p;
}

CkksParams CkksParams::preset(std::string_view name) {
  CkksParams p;
  if (name == "PN12QP109") {
    p = custom(4096, {58, 40, 40}, 58, std::ldexp(1.0, 40));
    p.security_bits = 128;
  } else if (name == "PN13QP218") {
    p = custom(8192, {58, 40, 40, 40}, 58, std::ldexp(1.0, 40));
    p.security_bits = 128;
  } else if (name == "toy-n16") {
    // Insecure test preset; keeps the default chain shape so noise behaviour
    // matches the real parameter sets.
    p = custom(16, {58, 40, 40}, 58, std::ldexp(1.0, 40));
    p.security_bits = 0;
  } else {
    throw std::invalid_argument("unknown parameter preset: " + std::string(name));
  }
  p.preset_name = std::string(name);
  return p;
}

void CkksParams::validate() const {
  if (ring_dim < 8 || (ring_dim & (ring_dim - 1)) != 0)
    throw std::invalid_argument("ring_dim must be a power of two >= 8");
  if (modulus_chain.size() < 2)
    throw std::invalid_argument("modulus chain needs a base prime and at least one rescaling prime");
  if (!(scale > 0))
    throw std::invalid_argument("scale must be positive");
  u64 max_prime = 0;
  for (std::size_t i = 0; i < modulus_chain.size(); ++i) {
    u64 q = modulus_chain[i];
    if (!is_prime(q) || (q - 1) % (2 * ring_dim) != 0)
      throw std::invalid_argument("chain element is not an NTT prime for this ring");
    for (std::size_t j = 0; j < i; ++j)
      if (modulus_chain[j] == q)
        throw std::invalid_argument("chain primes must be distinct");
    max_prime = std::max(max_prime, q);
  }
  // One rescale per multiplication: every rescaling prime must sit within a
  // factor of two of the scale.
  for (std::size_t i = 1; i < modulus_chain.size(); ++i) {
    double q = static_cast<double>(modulus_chain[i]);
    if (scale > 2.0 * q || scale < q / 2.0)
      throw std::invalid_argument("rescaling primes must lie near the scale");
  }
  if (static_cast<double>(modulus_chain[0]) < scale)
    throw std::invalid_argument("base prime must not be below the scale");
  if (special_prime == 0 || !is_prime(special_prime) ||
      (special_prime - 1) % (2 * ring_dim) != 0)
    throw std::invalid_argument("special prime is not an NTT prime for this ring");
  if (special_prime < max_prime)
    throw std::invalid_argument("special prime must dominate the chain primes");
  for (u64 q : modulus_chain)
    if (q == special_prime)
      throw std::invalid_argument("special prime must not appear in the chain");
}

}  // namespace ambfhe::ckks
