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

#include "ambfhe/ckks/serialize.hpp"

#include <cstring>

#include "ambfhe/common/bytes.hpp"

namespace ambfhe::ckks {

namespace {

void write_header(ByteWriter& w, ObjectTag tag) {
  w.bytes(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(kSerialMagic), 4));
  w.u16(kSerialVersion);
  w.u8(static_cast<std::uint8_t>(tag));
}

ByteReader open_header(std::span<const std::uint8_t> bytes, ObjectTag expect) {
  ByteReader r(bytes);
  try {
    auto magic = r.bytes(4);
    if (std::memcmp(magic.data(), kSerialMagic, 4) != 0)
      throw SerializeError("bad magic");
    if (r.u16() != kSerialVersion) throw SerializeError("unsupported version");
    auto tag = static_cast<ObjectTag>(r.u8());
    if (tag != expect) throw SerializeError("unexpected object tag");
  } catch (const ByteUnderflow&) {
    throw SerializeError("truncated header");
  }
  return r;
}

void write_poly(ByteWriter& w, const RnsPoly& p) {
  w.u8(p.ntt_form ? 1 : 0);
  w.u8(p.with_special ? 1 : 0);
  w.u64(p.rows.size());
  for (const auto& row : p.rows) {
    w.u64(row.size());
    for (u64 v : row) w.u64(v);
  }
}

RnsPoly read_poly(ByteReader& r, const CkksContext& ctx) {
  RnsPoly p;
  p.ntt_form = r.u8() != 0;
  p.with_special = r.u8() != 0;
  std::uint64_t rows = r.u64();
  std::size_t max_rows = ctx.ring().num_chain_primes() + 1;
  if (rows == 0 || rows > max_rows) throw SerializeError("bad row count");
  p.rows.resize(rows);
  for (auto& row : p.rows) {
    std::uint64_t len = r.u64();
    if (len != ctx.ring().n()) throw SerializeError("bad residue length");
    row.resize(len);
    for (auto& v : row) v = r.u64();
  }
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    u64 q = ctx.ring().row_prime(p, i);
    for (u64 v : p.rows[i])
      if (v >= q) throw SerializeError("residue out of range");
  }
  return p;
}

void write_ksk(ByteWriter& w, const KeySwitchKey& k) {
  w.u64(k.digits.size());
  for (const auto& [b, a] : k.digits) {
    write_poly(w, b);
    write_poly(w, a);
  }
}

KeySwitchKey read_ksk(ByteReader& r, const CkksContext& ctx) {
  KeySwitchKey k;
  std::uint64_t digits = r.u64();
  if (digits == 0 || digits > ctx.ring().num_chain_primes())
    throw SerializeError("bad digit count");
  k.digits.reserve(digits);
  for (std::uint64_t i = 0; i < digits; ++i) {
    RnsPoly b = read_poly(r, ctx);
    RnsPoly a = read_poly(r, ctx);
    k.digits.emplace_back(std::move(b), std::move(a));
  }
  return k;
}

void finish(ByteReader& r) {
  if (!r.exhausted()) throw SerializeError("trailing bytes");
}

}  // namespace

std::vector<std::uint8_t> serialize(const CkksParams& params) {
  ByteWriter w;
  write_header(w, ObjectTag::kParams);
  w.str16(params.preset_name);
  w.u64(params.ring_dim);
  w.u64(params.modulus_chain.size());
  for (u64 q : params.modulus_chain) w.u64(q);
  w.u64(params.special_prime);
  w.f64(params.scale);
  w.u32(static_cast<std::uint32_t>(params.security_bits));
  return w.take();
}

CkksParams deserialize_params(std::span<const std::uint8_t> bytes) {
  ByteReader r = open_header(bytes, ObjectTag::kParams);
  try {
    CkksParams p;
    p.preset_name = r.str16();
    p.ring_dim = r.u64();
    std::uint64_t chain = r.u64();
    if (chain > 64) throw SerializeError("absurd chain length");
    for (std::uint64_t i = 0; i < chain; ++i) p.modulus_chain.push_back(r.u64());
    p.special_prime = r.u64();
    p.scale = r.f64();
    p.security_bits = static_cast<int>(r.u32());
    finish(r);
    p.validate();
    return p;
  } catch (const ByteUnderflow&) {
    throw SerializeError("truncated params");
  }
}

std::vector<std::uint8_t> serialize(const PublicKey& pk) {
  ByteWriter w;
  write_header(w, ObjectTag::kPublicKey);
  write_poly(w, pk.b);
  write_poly(w, pk.a);
  return w.take();
}

PublicKey deserialize_public_key(std::span<const std::uint8_t> bytes,
                                 const CkksContext& ctx) {
  ByteReader r = open_header(bytes, ObjectTag::kPublicKey);
  try {
    PublicKey pk;
    pk.b = read_poly(r, ctx);
    pk.a = read_poly(r, ctx);
    finish(r);
    return pk;
  } catch (const ByteUnderflow&) {
    throw SerializeError("truncated public key");
  }
}

std::vector<std::uint8_t> serialize(const EvaluationKeys& evk) {
  ByteWriter w;
  write_header(w, ObjectTag::kEvaluationKeys);
  write_ksk(w, evk.relin);
  w.u64(evk.galois.size());
  for (const auto& [step, gk] : evk.galois) {
    w.u64(step);
    w.u64(gk.galois_elt);
    write_ksk(w, gk.ksk);
  }
  return w.take();
}

EvaluationKeys deserialize_evaluation_keys(std::span<const std::uint8_t> bytes,
                                           const CkksContext& ctx) {
  ByteReader r = open_header(bytes, ObjectTag::kEvaluationKeys);
  try {
    EvaluationKeys evk;
    evk.relin = read_ksk(r, ctx);
    std::uint64_t n_galois = r.u64();
    for (std::uint64_t i = 0; i < n_galois; ++i) {
      GaloisKey gk;
      gk.step = r.u64();
      gk.galois_elt = r.u64();
      if (gk.galois_elt !=
          Ring::galois_elt_for_rotation(gk.step, ctx.ring().n()))
        throw SerializeError("galois element does not match step");
      gk.perm = ctx.ring().galois_permutation(gk.galois_elt);
      gk.ksk = read_ksk(r, ctx);
      evk.galois.emplace(gk.step, std::move(gk));
    }
    finish(r);
    return evk;
  } catch (const ByteUnderflow&) {
    throw SerializeError("truncated evaluation keys");
  }
}

std::vector<std::uint8_t> serialize(const Plaintext& pt) {
  ByteWriter w;
  write_header(w, ObjectTag::kPlaintext);
  w.f64(pt.scale);
  w.u64(pt.level);
  write_poly(w, pt.poly);
  return w.take();
}

Plaintext deserialize_plaintext(std::span<const std::uint8_t> bytes,
                                const CkksContext& ctx) {
  ByteReader r = open_header(bytes, ObjectTag::kPlaintext);
  try {
    Plaintext pt;
    pt.scale = r.f64();
    pt.level = r.u64();
    pt.poly = read_poly(r, ctx);
    finish(r);
    if (pt.level > ctx.top_level() || pt.poly.level() != pt.level)
      throw SerializeError("plaintext level inconsistent");
    return pt;
  } catch (const ByteUnderflow&) {
    throw SerializeError("truncated plaintext");
  }
}

std::vector<std::uint8_t> serialize(const Ciphertext& ct) {
  ByteWriter w;
  write_header(w, ObjectTag::kCiphertext);
  w.u64(ct.parts.size());
  w.f64(ct.scale);
  w.u64(ct.level);
  w.u64(ct.slot_count);
  for (const auto& part : ct.parts) write_poly(w, part);
  return w.take();
}

Ciphertext deserialize_ciphertext(std::span<const std::uint8_t> bytes,
                                  const CkksContext& ctx) {
  ByteReader r = open_header(bytes, ObjectTag::kCiphertext);
  try {
    Ciphertext ct;
    std::uint64_t parts = r.u64();
    if (parts < 2 || parts > 3) throw SerializeError("bad part count");
    ct.scale = r.f64();
    ct.level = r.u64();
    ct.slot_count = r.u64();
    for (std::uint64_t i = 0; i < parts; ++i) ct.parts.push_back(read_poly(r, ctx));
    finish(r);
    if (ct.level > ctx.top_level()) throw SerializeError("ciphertext level out of range");
    if (ct.slot_count != ctx.slot_count()) throw SerializeError("slot count mismatch");
    for (const auto& part : ct.parts)
      if (part.level() != ct.level || part.with_special || !part.ntt_form)
        throw SerializeError("ciphertext part shape inconsistent");
    return ct;
  } catch (const ByteUnderflow&) {
    throw SerializeError("truncated ciphertext");
  }
}

std::vector<std::uint8_t> serialize(const SecretKey& sk) {
  ByteWriter w;
  write_header(w, ObjectTag::kSecretKey);
  write_poly(w, sk.s);
  return w.take();
}

SecretKey deserialize_secret_key(std::span<const std::uint8_t> bytes,
                                 const CkksContext& ctx) {
  ByteReader r = open_header(bytes, ObjectTag::kSecretKey);
  try {
    SecretKey sk;
    sk.s = read_poly(r, ctx);
    finish(r);
    return sk;
  } catch (const ByteUnderflow&) {
    throw SerializeError("truncated secret key");
  }
}

}  // namespace ambfhe::ckks
