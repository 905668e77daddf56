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

#ifndef AMBFHE_PROTO_PROTOCOL_HPP_
#define AMBFHE_PROTO_PROTOCOL_HPP_

#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "ambfhe/fusion/matcher.hpp"
#include "ambfhe/proto/store.hpp"
#include "ambfhe/proto/transport.hpp"

namespace ambfhe::proto {

// Injected time source (seconds); tests drive retry limiting with a fake.
using Clock = std::function<std::int64_t()>;
Clock system_clock_seconds();

struct ProtocolFailure : std::runtime_error {
  ProtoError code;
  ProtocolFailure(ProtoError c, const std::string& text)
      : std::runtime_error(text), code(c) {}
};

enum class Direction { kSent, kReceived };

struct TranscriptEntry {
  Direction dir = Direction::kSent;
  MsgType type = MsgType::kError;
  ProtocolMessage message;
};

using Transcript = std::vector<TranscriptEntry>;

// Messages in a verification transcript, KEYS excluded.
std::size_t verification_message_count(const Transcript& t);

struct ServerConfig {
  fusion::MatchPolicy policy;  // thresholds live server-side only
  linops::PackedLayout layout;
  std::size_t retry_limit = 3;
  std::int64_t retry_window_secs = 60;
  bool record_transcripts = false;
};

// Verifier role: holds (sk, pk, evk), stores encrypted references, decrypts
// scores and returns binary decisions. One verification session per
// VERIFY_CLAIM; per stage the server sends the reference, receives a SCORE
// and answers a DECISION; a final DECISION(stage=0) closes the session,
// so accept-at-stage-1 transcripts have 5 messages and two-stage ones 8.
class AuthServer {
 public:
  AuthServer(ckks::CkksContext& ctx, ServerConfig config,
             const std::string& store_path, Clock clock = system_clock_seconds());
  AuthServer(ckks::CkksContext& ctx, ServerConfig config,
             const std::string& store_path, ckks::KeyBundle keys,
             Clock clock = system_clock_seconds());

  // Handles one connection until the peer closes. Thread-safe across
  // concurrent connections.
  void serve_connection(Transport& t);

  // Score decision seam: reads slot 0 of the decrypted score, computes
  // delta_j = 2j - 2s and applies the strict delta < tau_j rule.
  fusion::StageVerdict decide_score(const ckks::Ciphertext& score,
                                    std::size_t stage) const;

  const ckks::KeyBundle& keys() const { return keys_; }
  const ServerConfig& config() const { return config_; }
  ReferenceStore& store() { return store_; }
  std::vector<Transcript> transcripts() const;

 private:
  struct SessionState;
  void handle_message(Transport& t, const ProtocolMessage& msg, SessionState& s,
                      Transcript& tr);
  void send_tracked(Transport& t, const ProtocolMessage& msg, Transcript& tr);
  void record_failure(const std::string& subject_id);
  bool throttled(const std::string& subject_id);

  ckks::CkksContext& ctx_;
  ServerConfig config_;
  ckks::KeyBundle keys_;
  ReferenceStore store_;
  Clock clock_;
  std::vector<std::uint8_t> keys_msg_pk_;
  std::vector<std::uint8_t> keys_msg_evk_;

  mutable std::mutex failures_mutex_;
  std::map<std::string, std::deque<std::int64_t>> failures_;
  mutable std::mutex transcripts_mutex_;
  std::vector<Transcript> transcripts_;
};

// Claimant role: encrypts templates under the server's public key, computes
// encrypted scores on the concatenated reference, and only ever learns
// binary verdicts.
class AuthClient {
 public:
  AuthClient(ckks::CkksContext& ctx, Transport& t, linops::PackedLayout layout);

  // Receives the KEYS message; parsed keys are cached by fingerprint.
  void handshake();

  void enroll(const std::string& subject_id,
              const std::vector<bio::Template>& modalities, bool replace = false);

  struct VerifyResult {
    bool accepted = false;
    std::size_t stages_used = 0;
    fusion::VerificationOutcome outcome;
  };

  // modality_order drives probe acquisition; thresholds stay server-side.
  VerifyResult verify(const std::string& subject_id,
                      const fusion::ProbeSupplier& probes,
                      const std::vector<bio::Modality>& modality_order);

  const Transcript& transcript() const { return transcript_; }

 private:
  ProtocolMessage expect_reply();
  void send_tracked(const ProtocolMessage& msg);

  ckks::CkksContext& ctx_;
  Transport& transport_;
  linops::PackedLayout layout_;
  bool have_keys_ = false;
  std::uint64_t key_fingerprint_ = 0;
  ckks::PublicKey pk_;
  ckks::EvaluationKeys evk_;
  Transcript transcript_;
};

}  // namespace ambfhe::proto

#endif  // AMBFHE_PROTO_PROTOCOL_HPP_
