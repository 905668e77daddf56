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

#include "ambfhe/proto/wire.hpp"

#include <cstring>

#include "ambfhe/common/bytes.hpp"

namespace ambfhe::proto {

MsgType type_of(const ProtocolMessage& msg) {
  return static_cast<MsgType>(msg.index() + 1);
}

const char* type_name(MsgType t) {
  switch (t) {
    case MsgType::kKeys: return "KEYS";
    case MsgType::kEnroll: return "ENROLL";
    case MsgType::kVerifyClaim: return "VERIFY_CLAIM";
    case MsgType::kReference: return "REFERENCE";
    case MsgType::kScore: return "SCORE";
    case MsgType::kDecision: return "DECISION";
    case MsgType::kError: return "ERROR";
  }
  return "?";
}

namespace {

void write_payload(ByteWriter& w, const KeysMsg& m) {
  w.blob64(m.pk_bytes);
  w.blob64(m.evk_bytes);
}
void write_payload(ByteWriter& w, const EnrollMsg& m) {
  w.str16(m.subject_id);
  w.u8(m.replace ? 1 : 0);
  w.blob64(m.ct_fused);
}
void write_payload(ByteWriter& w, const VerifyClaimMsg& m) { w.str16(m.subject_id); }
void write_payload(ByteWriter& w, const ReferenceMsg& m) { w.blob64(m.ct_ref); }
void write_payload(ByteWriter& w, const ScoreMsg& m) {
  w.u8(m.stage);
  w.blob64(m.ct_score);
}
void write_payload(ByteWriter& w, const DecisionMsg& m) {
  w.u8(m.stage);
  w.u8(m.verdict);
}
void write_payload(ByteWriter& w, const ErrorMsg& m) {
  w.u16(m.code);
  w.str16(m.text);
}

ProtocolMessage parse_payload(MsgType type, ByteReader& r) {
  switch (type) {
    case MsgType::kKeys: {
      KeysMsg m;
      m.pk_bytes = r.blob64();
      m.evk_bytes = r.blob64();
      return m;
    }
    case MsgType::kEnroll: {
      EnrollMsg m;
      m.subject_id = r.str16();
      std::uint8_t rep = r.u8();
      if (rep > 1) throw WireException(WireError::kBadPayload);
      m.replace = rep == 1;
      m.ct_fused = r.blob64();
      if (m.subject_id.empty()) throw WireException(WireError::kBadPayload);
      return m;
    }
    case MsgType::kVerifyClaim: {
      VerifyClaimMsg m;
      m.subject_id = r.str16();
      if (m.subject_id.empty()) throw WireException(WireError::kBadPayload);
      return m;
    }
    case MsgType::kReference: {
      ReferenceMsg m;
      m.ct_ref = r.blob64();
      return m;
    }
    case MsgType::kScore: {
      ScoreMsg m;
      m.stage = r.u8();
      if (m.stage == 0) throw WireException(WireError::kBadPayload);
      m.ct_score = r.blob64();
      return m;
    }
    case MsgType::kDecision: {
      DecisionMsg m;
      m.stage = r.u8();
      m.verdict = r.u8();
      if (m.verdict != kVerdictReject && m.verdict != kVerdictAccept)
        throw WireException(WireError::kBadPayload);
      return m;
    }
    case MsgType::kError: {
      ErrorMsg m;
      m.code = r.u16();
      m.text = r.str16();
      return m;
    }
  }
  throw WireException(WireError::kBadMsgType);
}

}  // namespace

std::vector<std::uint8_t> serialize(const ProtocolMessage& msg) {
  ByteWriter payload;
  std::visit([&payload](const auto& m) { write_payload(payload, m); }, msg);
  if (payload.data().size() > kMaxPayload)
    throw WireException(WireError::kBadPayload);

  ByteWriter w;
  w.bytes(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(kWireMagic), 4));
  w.u16(kWireVersion);
  w.u8(static_cast<std::uint8_t>(type_of(msg)));
  w.u32(static_cast<std::uint32_t>(payload.data().size()));
  w.bytes(payload.data());
  return w.take();
}

std::uint32_t peek_payload_len(std::span<const std::uint8_t> header) {
  if (header.size() < kWireHeaderSize)
    throw WireException(WireError::kHeaderTruncated);
  std::uint32_t len;
  std::memcpy(&len, header.data() + 7, 4);
  return len;
}

ProtocolMessage deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kWireHeaderSize)
    throw WireException(WireError::kHeaderTruncated);
  if (std::memcmp(bytes.data(), kWireMagic, 4) != 0)
    throw WireException(WireError::kBadMagic);
  std::uint16_t version;
  std::memcpy(&version, bytes.data() + 4, 2);
  if (version != kWireVersion) throw WireException(WireError::kBadVersion);
  std::uint8_t raw_type = bytes[6];
  if (raw_type < 1 || raw_type > 7) throw WireException(WireError::kBadMsgType);
  std::uint32_t payload_len;
  std::memcpy(&payload_len, bytes.data() + 7, 4);
  if (payload_len > kMaxPayload) throw WireException(WireError::kBadPayload);
  if (bytes.size() < kWireHeaderSize + payload_len)
    throw WireException(WireError::kPayloadTruncated);
  if (bytes.size() > kWireHeaderSize + payload_len)
    throw WireException(WireError::kLengthMismatch);

  ByteReader r(bytes.subspan(kWireHeaderSize, payload_len));
  try {
    ProtocolMessage msg = parse_payload(static_cast<MsgType>(raw_type), r);
    if (!r.exhausted()) throw WireException(WireError::kLengthMismatch);
    return msg;
  } catch (const ByteUnderflow&) {
    // The declared payload length does not cover the payload's own fields.
    throw WireException(WireError::kLengthMismatch);
  }
}

}  // namespace ambfhe::proto
