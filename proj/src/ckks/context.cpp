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

#include "ambfhe/ckks/context.hpp"

#include <cmath>

namespace ambfhe::ckks {

CkksContext::CkksContext(CkksParams params, std::optional<std::uint64_t> seed)
    : params_(std::move(params)), ring_(params_), encoder_(params_.ring_dim),
      rng_(seed ? ChaChaRng(*seed) : ChaChaRng::from_entropy()) {}

RnsPoly CkksContext::sample_error_poly(std::size_t level, bool with_special) {
  std::vector<i64> e(ring_.n());
  for (auto& x : e) x = rng_.rounded_gaussian(kErrorStdDev);
  RnsPoly p = ring_.lift_signed(e, level, with_special);
  ring_.to_ntt(p);
  return p;
}

KeySwitchKey CkksContext::make_ksk(const RnsPoly& s_tilde, const SecretKey& sk) {
  std::size_t L = top_level();
  KeySwitchKey ksk;
  ksk.digits.reserve(L + 1);
  for (std::size_t j = 0; j <= L; ++j) {
    RnsPoly a = ring_.sample_uniform(rng_, L, /*with_special=*/true);
    RnsPoly e = sample_error_poly(L, /*with_special=*/true);
    RnsPoly b = ring_.negate(ring_.mul(a, sk.s));
    ring_.add_inplace(b, e);
    // Gadget term: (P mod q_j) * s_tilde, placed on row j only.
    RnsPoly g = s_tilde;
    for (std::size_t r = 0; r < g.rows.size(); ++r) {
      if (r == j) {
        ring_.mul_scalar_row_inplace(g, r, ring_.special_prime() % ring_.chain_prime(j));
      } else {
        std::fill(g.rows[r].begin(), g.rows[r].end(), 0);
      }
    }
    ring_.add_inplace(b, g);
    ksk.digits.emplace_back(std::move(b), std::move(a));
  }
  return ksk;
}

KeyBundle CkksContext::keygen(const std::vector<std::size_t>& rotation_steps) {
  std::lock_guard<std::mutex> lock(rng_mutex_);
  std::size_t L = top_level();

  KeyBundle kb;
  std::vector<i64> s_coeffs(ring_.n());
  for (auto& x : s_coeffs) x = rng_.ternary();
  RnsPoly s = ring_.lift_signed(s_coeffs, L, /*with_special=*/true);
  ring_.to_ntt(s);
  kb.sk.s = std::move(s);

  RnsPoly s_chain = kb.sk.s;
  s_chain.rows.pop_back();
  s_chain.with_special = false;

  kb.pk.a = ring_.sample_uniform(rng_, L, false);
  RnsPoly e = sample_error_poly(L, false);
  kb.pk.b = ring_.negate(ring_.mul(kb.pk.a, s_chain));
  ring_.add_inplace(kb.pk.b, e);

  kb.evk.relin = make_ksk(ring_.mul(kb.sk.s, kb.sk.s), kb.sk);

  for (std::size_t step : rotation_steps) {
    if (step == 0 || step >= slot_count())
      throw std::invalid_argument("rotation step out of [1, N/2-1]");
    GaloisKey gk;
    gk.step = step;
    gk.galois_elt = Ring::galois_elt_for_rotation(step, ring_.n());
    gk.perm = ring_.galois_permutation(gk.galois_elt);
    gk.ksk = make_ksk(ring_.apply_galois_ntt(kb.sk.s, gk.perm), kb.sk);
    kb.evk.galois.emplace(step, std::move(gk));
  }
  return kb;
}

Plaintext CkksContext::encode(std::span<const double> values, double scale,
                              std::size_t level) const {
  if (values.size() > slot_count())
    throw std::invalid_argument("vector longer than slot count");
  if (level > top_level()) throw std::invalid_argument("level out of range");
  if (!(scale > 0)) throw std::invalid_argument("scale must be positive");

  std::vector<long double> coeffs = encoder_.slots_to_coeffs(values);
  long double s = static_cast<long double>(scale);
  std::vector<i64> rounded(coeffs.size());
  bool small = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    long double t = coeffs[i] * s;
    if (t > 4.5e18L || t < -4.5e18L) {
      small = false;
      break;
    }
    rounded[i] = static_cast<i64>(std::llrint(t));
  }

  Plaintext pt;
  pt.scale = scale;
  pt.level = level;
  if (small) {
    pt.poly = ring_.lift_signed(rounded, level, false);
  } else {
    // Very large scales (e.g. unrescaled products in tests) go through a
    // long-double residue reduction; the sub-integer slack is far below the
    // scheme's own noise.
    pt.poly = ring_.zero(level, false, false);
    for (std::size_t r = 0; r < pt.poly.rows.size(); ++r) {
      long double q = static_cast<long double>(ring_.chain_prime(r));
      for (std::size_t i = 0; i < coeffs.size(); ++i) {
        long double t = std::fmod(std::nearbyint(coeffs[i] * s), q);
        if (t < 0) t += q;
        pt.poly.rows[r][i] = static_cast<u64>(t);
      }
    }
  }
  ring_.to_ntt(pt.poly);
  return pt;
}

Plaintext CkksContext::encode(std::span<const double> values) const {
  return encode(values, params_.scale, top_level());
}

std::vector<double> CkksContext::decode(const Plaintext& pt) const {
  RnsPoly p = pt.poly;
  ring_.from_ntt(p);
  std::vector<long double> coeffs = ring_.to_centered_values(p);
  long double s = static_cast<long double>(pt.scale);
  for (auto& c : coeffs) c /= s;
  return encoder_.coeffs_to_slots(coeffs);
}

Ciphertext CkksContext::encrypt(const PublicKey& pk, const Plaintext& pt) {
  std::lock_guard<std::mutex> lock(rng_mutex_);
  std::size_t level = pt.level;
  if (level > top_level()) throw std::invalid_argument("plaintext level out of range");

  std::vector<i64> v_coeffs(ring_.n());
  for (auto& x : v_coeffs) x = rng_.ternary();
  RnsPoly v = ring_.lift_signed(v_coeffs, level, false);
  ring_.to_ntt(v);

  RnsPoly e0 = sample_error_poly(level, false);
  RnsPoly e1 = sample_error_poly(level, false);

  Ciphertext ct;
  ct.scale = pt.scale;
  ct.level = level;
  ct.slot_count = slot_count();
  RnsPoly c0 = ring_.mul(v, ring_.slice_prefix(pk.b, level));
  ring_.add_inplace(c0, e0);
  ring_.add_inplace(c0, pt.poly);
  RnsPoly c1 = ring_.mul(v, ring_.slice_prefix(pk.a, level));
  ring_.add_inplace(c1, e1);
  ct.parts.push_back(std::move(c0));
  ct.parts.push_back(std::move(c1));
  return ct;
}

Plaintext CkksContext::decrypt(const SecretKey& sk, const Ciphertext& ct) const {
  if (ct.parts.size() != 2)
    throw MalformedCiphertext("decrypt requires a 2-part ciphertext (relinearize first)");
  RnsPoly s = sk.s;
  s.rows.pop_back();
  s.with_special = false;
  s = ring_.slice_prefix(s, ct.level);

  Plaintext pt;
  pt.scale = ct.scale;
  pt.level = ct.level;
  pt.poly = ring_.mul(ct.parts[1], s);
  ring_.add_inplace(pt.poly, ct.parts[0]);
  return pt;
}

}  // namespace ambfhe::ckks
