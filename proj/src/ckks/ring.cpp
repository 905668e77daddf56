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

#include "ambfhe/ckks/ring.hpp"

#include <stdexcept>

namespace ambfhe::ckks {

Ring::Ring(const CkksParams& params)
    : n_(params.ring_dim), chain_(params.modulus_chain),
      special_(params.special_prime) {
  params.validate();
  for (u64 q : chain_) tables_.push_back(std::make_unique<NttTable>(q, n_));
  tables_.push_back(std::make_unique<NttTable>(special_, n_));

  std::size_t L = chain_.size();
  inv_last_.resize(L);
  for (std::size_t l = 1; l < L; ++l) {
    inv_last_[l].resize(l);
    for (std::size_t j = 0; j < l; ++j)
      inv_last_[l][j] = inv_mod(chain_[l] % chain_[j], chain_[j]);
  }
  inv_special_.resize(L);
  for (std::size_t j = 0; j < L; ++j)
    inv_special_[j] = inv_mod(special_ % chain_[j], chain_[j]);

  prod_mod_.resize(L);
  inv_prod_.resize(L);
  for (std::size_t j = 0; j < L; ++j) {
    prod_mod_[j].resize(j + 1);
    u64 acc = 1;
    for (std::size_t k = 0; k <= j; ++k) {
      prod_mod_[j][k] = acc;  // (q_0...q_{k-1}) mod q_j
      if (k < j) acc = mul_mod(acc, chain_[k] % chain_[j], chain_[j]);
    }
    if (j > 0) acc = mul_mod(prod_mod_[j][j - 1], chain_[j - 1] % chain_[j], chain_[j]);
    inv_prod_[j] = j == 0 ? 1 : inv_mod(acc, chain_[j]);
  }
}

u64 Ring::row_prime(const RnsPoly& p, std::size_t r) const {
  if (p.with_special && r + 1 == p.rows.size()) return special_;
  return chain_[r];
}

const NttTable& Ring::row_table(const RnsPoly& p, std::size_t r) const {
  if (p.with_special && r + 1 == p.rows.size()) return special_table();
  return chain_table(r);
}

RnsPoly Ring::zero(std::size_t level, bool with_special, bool ntt_form) const {
  if (level >= chain_.size()) throw std::invalid_argument("level out of range");
  RnsPoly p;
  p.ntt_form = ntt_form;
  p.with_special = with_special;
  p.rows.assign(level + 1 + (with_special ? 1 : 0), std::vector<u64>(n_, 0));
  return p;
}

RnsPoly Ring::slice_prefix(const RnsPoly& p, std::size_t level) const {
  if (p.with_special) throw std::invalid_argument("cannot slice a special-row poly");
  if (level > p.level()) throw std::invalid_argument("slice beyond poly level");
  RnsPoly out;
  out.ntt_form = p.ntt_form;
  out.with_special = false;
  out.rows.assign(p.rows.begin(), p.rows.begin() + level + 1);
  return out;
}

void Ring::to_ntt(RnsPoly& p) const {
  if (p.ntt_form) throw std::logic_error("poly already in NTT form");
  for (std::size_t r = 0; r < p.rows.size(); ++r)
    row_table(p, r).forward(p.rows[r].data());
  p.ntt_form = true;
}

void Ring::from_ntt(RnsPoly& p) const {
  if (!p.ntt_form) throw std::logic_error("poly already in coefficient form");
  for (std::size_t r = 0; r < p.rows.size(); ++r)
    row_table(p, r).inverse(p.rows[r].data());
  p.ntt_form = false;
}

void Ring::check_shape(const RnsPoly& a, const RnsPoly& b) const {
  if (!a.shape_matches(b)) throw std::invalid_argument("rns poly shape mismatch");
}

RnsPoly Ring::add(const RnsPoly& a, const RnsPoly& b) const {
  RnsPoly out = a;
  add_inplace(out, b);
  return out;
}

void Ring::add_inplace(RnsPoly& a, const RnsPoly& b) const {
  check_shape(a, b);
  for (std::size_t r = 0; r < a.rows.size(); ++r) {
    u64 q = row_prime(a, r);
    u64* x = a.rows[r].data();
    const u64* y = b.rows[r].data();
    for (std::size_t i = 0; i < n_; ++i) x[i] = add_mod(x[i], y[i], q);
  }
}

RnsPoly Ring::sub(const RnsPoly& a, const RnsPoly& b) const {
  check_shape(a, b);
  RnsPoly out = a;
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    u64 q = row_prime(out, r);
    u64* x = out.rows[r].data();
    const u64* y = b.rows[r].data();
    for (std::size_t i = 0; i < n_; ++i) x[i] = sub_mod(x[i], y[i], q);
  }
  return out;
}

RnsPoly Ring::negate(const RnsPoly& a) const {
  RnsPoly out = a;
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    u64 q = row_prime(out, r);
    for (u64& x : out.rows[r]) x = neg_mod(x, q);
  }
  return out;
}

RnsPoly Ring::mul(const RnsPoly& a, const RnsPoly& b) const {
  check_shape(a, b);
  if (!a.ntt_form) throw std::logic_error("pointwise mul requires NTT form");
  RnsPoly out = a;
  for (std::size_t r = 0; r < out.rows.size(); ++r) {
    u64 q = row_prime(out, r);
    u64* x = out.rows[r].data();
    const u64* y = b.rows[r].data();
    for (std::size_t i = 0; i < n_; ++i) x[i] = mul_mod(x[i], y[i], q);
  }
  return out;
}

void Ring::mul_acc(const RnsPoly& a, const RnsPoly& b, RnsPoly& acc) const {
  check_shape(a, b);
  check_shape(a, acc);
  if (!a.ntt_form) throw std::logic_error("mul_acc requires NTT form");
  for (std::size_t r = 0; r < acc.rows.size(); ++r) {
    u64 q = row_prime(acc, r);
    u64* z = acc.rows[r].data();
    const u64* x = a.rows[r].data();
    const u64* y = b.rows[r].data();
    for (std::size_t i = 0; i < n_; ++i)
      z[i] = add_mod(z[i], mul_mod(x[i], y[i], q), q);
  }
}

void Ring::mul_scalar_row_inplace(RnsPoly& p, std::size_t row, u64 scalar) const {
  u64 q = row_prime(p, row);
  u64 s = scalar % q;
  u64 s_shoup = shoup_precompute(s, q);
  for (u64& x : p.rows[row]) x = mul_mod_shoup(x, s, s_shoup, q);
}

RnsPoly Ring::sample_uniform(ChaChaRng& rng, std::size_t level,
                             bool with_special) const {
  RnsPoly p = zero(level, with_special, true);
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    u64 q = row_prime(p, r);
    for (u64& x : p.rows[r]) x = rng.uniform_below(q);
  }
  return p;
}

RnsPoly Ring::lift_signed(const std::vector<i64>& coeffs, std::size_t level,
                          bool with_special) const {
  if (coeffs.size() != n_) throw std::invalid_argument("coefficient count mismatch");
  RnsPoly p = zero(level, with_special, false);
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    u64 q = row_prime(p, r);
    for (std::size_t i = 0; i < n_; ++i) p.rows[r][i] = reduce_signed(coeffs[i], q);
  }
  return p;
}

RnsPoly Ring::lift_digit(const std::vector<u64>& digit, u64 src_prime,
                         std::size_t level, bool with_special) const {
  RnsPoly p = zero(level, with_special, false);
  u64 half = src_prime / 2;
  for (std::size_t r = 0; r < p.rows.size(); ++r) {
    u64 q = row_prime(p, r);
    if (q == src_prime) {
      p.rows[r] = digit;
      continue;
    }
    for (std::size_t i = 0; i < n_; ++i) {
      u64 v = digit[i];
      p.rows[r][i] = v <= half ? v % q : neg_mod((src_prime - v) % q, q);
    }
  }
  return p;
}

void Ring::div_round_by_last_prime(RnsPoly& p) const {
  if (p.with_special) throw std::logic_error("unexpected special row in rescale");
  std::size_t l = p.level();
  if (l == 0) throw std::logic_error("no prime left to drop");
  from_ntt(p);
  const std::vector<u64>& last = p.rows[l];
  u64 ql = chain_[l];
  u64 half = ql / 2;
  for (std::size_t j = 0; j < l; ++j) {
    u64 q = chain_[j];
    u64 inv = inv_last_[l][j];
    u64 inv_shoup = shoup_precompute(inv, q);
    u64* x = p.rows[j].data();
    for (std::size_t i = 0; i < n_; ++i) {
      u64 v = last[i];
      u64 lifted = v <= half ? v % q : neg_mod((ql - v) % q, q);
      x[i] = mul_mod_shoup(sub_mod(x[i], lifted, q), inv, inv_shoup, q);
    }
  }
  p.rows.pop_back();
  to_ntt(p);
}

void Ring::div_round_by_special(RnsPoly& p) const {
  if (!p.with_special) throw std::logic_error("no special row to drop");
  from_ntt(p);
  const std::vector<u64> sp = std::move(p.rows.back());
  p.rows.pop_back();
  p.with_special = false;
  u64 half = special_ / 2;
  for (std::size_t j = 0; j < p.rows.size(); ++j) {
    u64 q = chain_[j];
    u64 inv = inv_special_[j];
    u64 inv_shoup = shoup_precompute(inv, q);
    u64* x = p.rows[j].data();
    for (std::size_t i = 0; i < n_; ++i) {
      u64 v = sp[i];
      u64 lifted = v <= half ? v % q : neg_mod((special_ - v) % q, q);
      x[i] = mul_mod_shoup(sub_mod(x[i], lifted, q), inv, inv_shoup, q);
    }
  }
  to_ntt(p);
}

std::vector<long double> Ring::to_centered_values(const RnsPoly& p) const {
  if (p.ntt_form) throw std::logic_error("centered values need coefficient form");
  if (p.with_special) throw std::logic_error("unexpected special row");
  std::size_t L = p.rows.size();
  std::vector<long double> out(n_);
  std::vector<u64> y(L);
  for (std::size_t i = 0; i < n_; ++i) {
    // Garner mixed-radix digits.
    for (std::size_t j = 0; j < L; ++j) {
      u64 qj = chain_[j];
      u64 v = 0;
      for (std::size_t k = 0; k < j; ++k)
        v = add_mod(v, mul_mod(y[k] % qj, prod_mod_[j][k], qj), qj);
      u64 xj = p.rows[j][i];
      y[j] = mul_mod(sub_mod(xj % qj, v, qj), inv_prod_[j], qj);
    }
    // Balance digits bottom-up so small values never touch large radices.
    long double value = 0.0L;
    long double radix = 1.0L;
    u64 carry = 0;
    for (std::size_t j = 0; j < L; ++j) {
      u64 qj = chain_[j];
      u64 t = y[j] + carry;  // <= q_j
      carry = 0;
      if (t == qj) {
        t = 0;
        carry = 1;
      } else if (t > qj / 2) {
        value += (static_cast<long double>(t) - static_cast<long double>(qj)) * radix;
        carry = 1;
        radix *= static_cast<long double>(qj);
        continue;
      }
      value += static_cast<long double>(t) * radix;
      radix *= static_cast<long double>(qj);
    }
    out[i] = value;  // final carry wraps mod Q; centered inputs never need it
  }
  return out;
}

u64 Ring::galois_elt_for_rotation(std::size_t step, std::size_t n) {
  u64 two_n = 2 * static_cast<u64>(n);
  return pow_mod(5, static_cast<u64>(step), two_n);
}

std::vector<std::uint32_t> Ring::galois_permutation(u64 galois_elt) const {
  if ((galois_elt & 1) == 0) throw std::invalid_argument("galois element must be odd");
  u64 two_n = 2 * static_cast<u64>(n_);
  std::vector<std::uint32_t> perm(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    u64 j = ((2 * i + 1) * galois_elt) % two_n;
    perm[i] = static_cast<std::uint32_t>((j - 1) / 2);
  }
  return perm;
}

RnsPoly Ring::apply_galois_ntt(const RnsPoly& p,
                               const std::vector<std::uint32_t>& perm) const {
  if (!p.ntt_form) throw std::logic_error("galois permutation needs NTT form");
  RnsPoly out = p;
  for (std::size_t r = 0; r < p.rows.size(); ++r)
    for (std::size_t i = 0; i < n_; ++i) out.rows[r][i] = p.rows[r][perm[i]];
  return out;
}

}  // namespace ambfhe::ckks
