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

#ifndef AMBFHE_CKKS_RING_HPP_
#define AMBFHE_CKKS_RING_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "ambfhe/ckks/ntt.hpp"
#include "ambfhe/ckks/params.hpp"
#include "ambfhe/ckks/rng.hpp"

namespace ambfhe::ckks {

// Element of R_Q = Z_Q[X]/(X^N + 1) in residue form. rows[i] holds the
// residues mod chain prime i; when with_special is set the last row holds
// the residues mod the key-switching prime P.
struct RnsPoly {
  std::vector<std::vector<u64>> rows;
  bool ntt_form = false;
  bool with_special = false;

  std::size_t chain_rows() const { return rows.size() - (with_special ? 1 : 0); }
  std::size_t level() const { return chain_rows() - 1; }
  bool shape_matches(const RnsPoly& o) const {
    return rows.size() == o.rows.size() && with_special == o.with_special &&
           ntt_form == o.ntt_form;
  }
};

// Precomputed tables for one CkksParams instance: NTTs per prime, pairwise
// inverses for rescaling / mod-down, and Garner constants for reconstruction.
// Immutable after construction.
class Ring {
 public:
  explicit Ring(const CkksParams& params);

  std::size_t n() const { return n_; }
  std::size_t num_chain_primes() const { return chain_.size(); }
  u64 chain_prime(std::size_t i) const { return chain_[i]; }
  u64 special_prime() const { return special_; }
  // Prime backing row r of p.
  u64 row_prime(const RnsPoly& p, std::size_t r) const;
  const NttTable& chain_table(std::size_t i) const { return *tables_[i]; }
  const NttTable& special_table() const { return *tables_.back(); }
  const NttTable& row_table(const RnsPoly& p, std::size_t r) const;

  RnsPoly zero(std::size_t level, bool with_special, bool ntt_form) const;
  RnsPoly slice_prefix(const RnsPoly& p, std::size_t level) const;

  void to_ntt(RnsPoly& p) const;
  void from_ntt(RnsPoly& p) const;

  RnsPoly add(const RnsPoly& a, const RnsPoly& b) const;
  void add_inplace(RnsPoly& a, const RnsPoly& b) const;
  RnsPoly sub(const RnsPoly& a, const RnsPoly& b) const;
  RnsPoly negate(const RnsPoly& a) const;
  RnsPoly mul(const RnsPoly& a, const RnsPoly& b) const;  // NTT form only
  void mul_acc(const RnsPoly& a, const RnsPoly& b, RnsPoly& acc) const;
  void mul_scalar_row_inplace(RnsPoly& p, std::size_t row, u64 scalar) const;

  // Uniform element (returned NTT-form by convention; uniform either way).
  RnsPoly sample_uniform(ChaChaRng& rng, std::size_t level, bool with_special) const;
  // Small signed coefficient vector -> residue rows (coefficient form).
  RnsPoly lift_signed(const std::vector<i64>& coeffs, std::size_t level,
                      bool with_special) const;
  // Key-switch digit: residues mod src_prime, centered, lifted to every row
  // of a (level, with_special) shaped poly. Coefficient form.
  RnsPoly lift_digit(const std::vector<u64>& digit, u64 src_prime,
                     std::size_t level, bool with_special) const;

  // Exact division with rounding in RNS. Both take and return NTT form.
  void div_round_by_last_prime(RnsPoly& p) const;  // drops the top chain row
  void div_round_by_special(RnsPoly& p) const;     // drops the special row

  // Centered integer values of a coefficient-form poly (Garner lift).
  std::vector<long double> to_centered_values(const RnsPoly& coeff_form) const;

  // Galois automorphism X -> X^g as an index permutation on natural-order
  // NTT values.
  static u64 galois_elt_for_rotation(std::size_t step, std::size_t n);
  std::vector<std::uint32_t> galois_permutation(u64 galois_elt) const;
  RnsPoly apply_galois_ntt(const RnsPoly& p,
                           const std::vector<std::uint32_t>& perm) const;

 private:
  std::size_t n_ = 0;
  std::vector<u64> chain_;
  u64 special_ = 0;
  std::vector<std::unique_ptr<NttTable>> tables_;  // chain..., special last

  // inv_last_[l][j]: q_l^{-1} mod q_j for j < l. inv_special_[j]: P^{-1} mod q_j.
  std::vector<std::vector<u64>> inv_last_;
  std::vector<u64> inv_special_;
  // Garner: prod_mod_[j][k] = (q_0...q_{k-1}) mod q_j, inv_prod_[j] = its inverse for k=j.
  std::vector<std::vector<u64>> prod_mod_;
  std::vector<u64> inv_prod_;

  void check_shape(const RnsPoly& a, const RnsPoly& b) const;
};

}  // namespace ambfhe::ckks

#endif  // AMBFHE_CKKS_RING_HPP_
