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

#include "ambfhe/ckks/evaluator.hpp"

namespace ambfhe::ckks {

void Evaluator::check_binary(const Ciphertext& a, const Ciphertext& b) const {
  if (a.level != b.level) throw LevelMismatch();
  if (a.scale != b.scale) throw ScaleMismatch();
}

Ciphertext Evaluator::add(const Ciphertext& a, const Ciphertext& b) const {
  check_binary(a, b);
  if (a.parts.size() != b.parts.size())
    throw MalformedCiphertext("part count mismatch in add");
  Ciphertext out = a;
  const Ring& ring = ctx_.ring();
  for (std::size_t i = 0; i < out.parts.size(); ++i)
    ring.add_inplace(out.parts[i], b.parts[i]);
  if (counter_) ++counter_->ct_adds;
  return out;
}

Ciphertext Evaluator::sub(const Ciphertext& a, const Ciphertext& b) const {
  check_binary(a, b);
  if (a.parts.size() != b.parts.size())
    throw MalformedCiphertext("part count mismatch in sub");
  Ciphertext out = a;
  const Ring& ring = ctx_.ring();
  for (std::size_t i = 0; i < out.parts.size(); ++i)
    out.parts[i] = ring.sub(a.parts[i], b.parts[i]);
  if (counter_) ++counter_->ct_adds;
  return out;
}

Ciphertext Evaluator::negate(const Ciphertext& a) const {
  Ciphertext out = a;
  const Ring& ring = ctx_.ring();
  for (auto& part : out.parts) part = ring.negate(part);
  if (counter_) ++counter_->ct_adds;
  return out;
}

Ciphertext Evaluator::add_plain(const Ciphertext& a, const Plaintext& p) const {
  if (a.level != p.level) throw LevelMismatch();
  if (a.scale != p.scale) throw ScaleMismatch();
  Ciphertext out = a;
  ctx_.ring().add_inplace(out.parts[0], p.poly);
  if (counter_) ++counter_->ct_adds;
  return out;
}

Ciphertext Evaluator::mul_raw(const Ciphertext& a, const Ciphertext& b) const {
  check_binary(a, b);
  if (a.parts.size() != 2 || b.parts.size() != 2)
    throw MalformedCiphertext("tensor product requires 2-part inputs");
  const Ring& ring = ctx_.ring();
  Ciphertext out;
  out.level = a.level;
  out.scale = a.scale * b.scale;
  out.slot_count = a.slot_count;
  RnsPoly d0 = ring.mul(a.parts[0], b.parts[0]);
  RnsPoly d1 = ring.mul(a.parts[0], b.parts[1]);
  ring.add_inplace(d1, ring.mul(a.parts[1], b.parts[0]));
  RnsPoly d2 = ring.mul(a.parts[1], b.parts[1]);
  out.parts.push_back(std::move(d0));
  out.parts.push_back(std::move(d1));
  out.parts.push_back(std::move(d2));
  if (counter_) ++counter_->ct_mults;
  return out;
}

std::pair<RnsPoly, RnsPoly> Evaluator::key_switch(const RnsPoly& target,
                                                  const KeySwitchKey& ksk) const {
  const Ring& ring = ctx_.ring();
  std::size_t level = target.level();
  if (ksk.digits.size() < level + 1)
    throw MalformedCiphertext("key-switch key too shallow for this level");

  RnsPoly t = target;
  ring.from_ntt(t);

  RnsPoly acc0 = ring.zero(level, /*with_special=*/true, /*ntt=*/true);
  RnsPoly acc1 = ring.zero(level, /*with_special=*/true, /*ntt=*/true);
  std::size_t n = ring.n();
  // KSK rows span the full chain + special; the working basis is the chain
  // prefix + special, so row r maps to KSK row r and special to the last.
  auto acc_row = [&](std::vector<u64>& acc, const std::vector<u64>& d,
                     const std::vector<u64>& k, u64 q) {
    for (std::size_t i = 0; i < n; ++i)
      acc[i] = add_mod(acc[i], mul_mod(d[i], k[i], q), q);
  };
  for (std::size_t j = 0; j <= level; ++j) {
    RnsPoly digit =
        ring.lift_digit(t.rows[j], ring.chain_prime(j), level, /*with_special=*/true);
    ring.to_ntt(digit);
    const auto& [kb, ka] = ksk.digits[j];
    for (std::size_t r = 0; r <= level; ++r) {
      u64 q = ring.chain_prime(r);
      acc_row(acc0.rows[r], digit.rows[r], kb.rows[r], q);
      acc_row(acc1.rows[r], digit.rows[r], ka.rows[r], q);
    }
    u64 p = ring.special_prime();
    acc_row(acc0.rows[level + 1], digit.rows[level + 1], kb.rows.back(), p);
    acc_row(acc1.rows[level + 1], digit.rows[level + 1], ka.rows.back(), p);
  }
  ring.div_round_by_special(acc0);
  ring.div_round_by_special(acc1);
  return {std::move(acc0), std::move(acc1)};
}

Ciphertext Evaluator::relinearize(const Ciphertext& a,
                                  const EvaluationKeys& evk) const {
  if (a.parts.size() != 3)
    throw MalformedCiphertext("relinearize expects a 3-part ciphertext");
  if (evk.relin.digits.empty()) throw MissingRelinKey();
  auto [u0, u1] = key_switch(a.parts[2], evk.relin);
  Ciphertext out;
  out.level = a.level;
  out.scale = a.scale;
  out.slot_count = a.slot_count;
  const Ring& ring = ctx_.ring();
  out.parts.push_back(ring.add(a.parts[0], u0));
  out.parts.push_back(ring.add(a.parts[1], u1));
  if (counter_) ++counter_->relins;
  return out;
}

Ciphertext Evaluator::rescale(const Ciphertext& a) const {
  if (a.level == 0) throw LevelExhausted();
  Ciphertext out = a;
  const Ring& ring = ctx_.ring();
  u64 dropped = ring.chain_prime(a.level);
  for (auto& part : out.parts) ring.div_round_by_last_prime(part);
  out.level = a.level - 1;
  out.scale = a.scale / static_cast<double>(dropped);
  if (counter_) ++counter_->rescales;
  return out;
}

Ciphertext Evaluator::mul(const Ciphertext& a, const Ciphertext& b,
                          const EvaluationKeys& evk) const {
  if (a.level == 0) throw LevelExhausted();
  return rescale(relinearize(mul_raw(a, b), evk));
}

Ciphertext Evaluator::mul_plain(const Ciphertext& a, const Plaintext& p) const {
  if (a.level != p.level) throw LevelMismatch();
  if (a.level == 0) throw LevelExhausted();
  const Ring& ring = ctx_.ring();
  Ciphertext out;
  out.level = a.level;
  out.scale = a.scale * p.scale;
  out.slot_count = a.slot_count;
  for (const auto& part : a.parts) out.parts.push_back(ring.mul(part, p.poly));
  if (counter_) ++counter_->pt_mults;
  return rescale(out);
}

Ciphertext Evaluator::rotate(const Ciphertext& a, std::size_t k,
                             const EvaluationKeys& evk) const {
  std::size_t slots = a.slot_count;
  k %= slots;
  if (k == 0) return a;
  if (a.parts.size() != 2)
    throw MalformedCiphertext("rotate expects a 2-part ciphertext");
  auto it = evk.galois.find(k);
  if (it == evk.galois.end()) throw MissingGaloisKey(k);
  const GaloisKey& gk = it->second;

  const Ring& ring = ctx_.ring();
  RnsPoly c0 = ring.apply_galois_ntt(a.parts[0], gk.perm);
  RnsPoly c1 = ring.apply_galois_ntt(a.parts[1], gk.perm);
  auto [u0, u1] = key_switch(c1, gk.ksk);

  Ciphertext out;
  out.level = a.level;
  out.scale = a.scale;
  out.slot_count = a.slot_count;
  ring.add_inplace(u0, c0);
  out.parts.push_back(std::move(u0));
  out.parts.push_back(std::move(u1));
  if (counter_) ++counter_->rotations;
  return out;
}

}  // namespace ambfhe::ckks
