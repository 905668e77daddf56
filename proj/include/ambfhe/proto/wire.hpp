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

#ifndef AMBFHE_PROTO_WIRE_HPP_
#define AMBFHE_PROTO_WIRE_HPP_

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ambfhe::proto {

// Tagged, length-framed binary messages:
//   magic "AFHE" | version u16 LE | msg_type u8 | payload_len u32 LE | payload
// Strings are u16-length prefixed, ciphertext/key blobs u64-length prefixed.
// Verdicts are strictly binary; no message carries plaintext biometric data
// or plaintext scores.
inline constexpr char kWireMagic[4] = {'A', 'F', 'H', 'E'};
inline constexpr std::uint16_t kWireVersion = 1;
inline constexpr std::size_t kWireHeaderSize = 11;
inline constexpr std::uint32_t kMaxPayload = 256u << 20;

enum class MsgType : std::uint8_t {
  kKeys = 1,
  kEnroll = 2,
  kVerifyClaim = 3,
  kReference = 4,
  kScore = 5,
  kDecision = 6,
  kError = 7,
};

// The seven wire malformation classes, each with its own code.
enum class WireError : std::uint16_t {
  kBadMagic = 1,
  kBadVersion = 2,
  kBadMsgType = 3,
  kHeaderTruncated = 4,
  kPayloadTruncated = 5,
  kLengthMismatch = 6,
  kBadPayload = 7,
};

struct WireException : std::runtime_error {
  WireError code;
  explicit WireException(WireError c)
      : std::runtime_error("wire error " + std::to_string(static_cast<int>(c))),
        code(c) {}
};

// Application-level error codes carried by ERROR messages.
enum class ProtoError : std::uint16_t {
  kUnknownSubject = 1,
  kThrottled = 2,
  kBadState = 3,
  kDuplicateSubject = 4,
  kMalformedCiphertext = 5,
  kBadRequest = 6,
  kInternal = 7,
};

struct KeysMsg {
  std::vector<std::uint8_t> pk_bytes;
  std::vector<std::uint8_t> evk_bytes;
};

struct EnrollMsg {
  std::string subject_id;
  bool replace = false;
  std::vector<std::uint8_t> ct_fused;
};

struct VerifyClaimMsg {
  std::string subject_id;
};

struct ReferenceMsg {
  std::vector<std::uint8_t> ct_ref;
};

struct ScoreMsg {
  std::uint8_t stage = 0;  // 1-based
  std::vector<std::uint8_t> ct_score;
};

inline constexpr std::uint8_t kVerdictReject = 0;
inline constexpr std::uint8_t kVerdictAccept = 1;

// stage 0 marks the session-final verdict (and the enrollment ack).
struct DecisionMsg {
  std::uint8_t stage = 0;
  std::uint8_t verdict = kVerdictReject;
};

struct ErrorMsg {
  std::uint16_t code = 0;
  std::string text;
};

using ProtocolMessage = std::variant<KeysMsg, EnrollMsg, VerifyClaimMsg,
                                     ReferenceMsg, ScoreMsg, DecisionMsg, ErrorMsg>;

MsgType type_of(const ProtocolMessage& msg);
const char* type_name(MsgType t);

std::vector<std::uint8_t> serialize(const ProtocolMessage& msg);
// Throws WireException on any of the seven malformation classes.
ProtocolMessage deserialize(std::span<const std::uint8_t> bytes);

// Payload length field of a well-formed header; used by stream framing.
std::uint32_t peek_payload_len(std::span<const std::uint8_t> header);

}  // namespace ambfhe::proto

#endif  // AMBFHE_PROTO_WIRE_HPP_
