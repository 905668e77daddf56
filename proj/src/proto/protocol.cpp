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

#include "ambfhe/proto/protocol.hpp"

#include <chrono>

#include "ambfhe/ckks/serialize.hpp"

namespace ambfhe::proto {

Clock system_clock_seconds() {
  return [] {
    return std::chrono::duration_cast<std::chrono::seconds>(
               std::chrono::system_clock::now().time_since_epoch())
        .count();
  };
}

std::size_t verification_message_count(const Transcript& t) {
  std::size_t n = 0;
  for (const auto& e : t)
    if (e.type != MsgType::kKeys) ++n;
  return n;
}

namespace {

std::uint64_t fnv1a(std::span<const std::uint8_t> data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (std::uint8_t b : data) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Server
// ---------------------------------------------------------------------------

struct AuthServer::SessionState {
  enum class Phase { kIdle, kAwaitScore };
  Phase phase = Phase::kIdle;
  std::string claim;
  std::size_t stage = 0;
};

AuthServer::AuthServer(ckks::CkksContext& ctx, ServerConfig config,
                       const std::string& store_path, Clock clock)
    : AuthServer(ctx, config, store_path,
                 ctx.keygen(config.layout.required_rotation_steps()),
                 std::move(clock)) {}

AuthServer::AuthServer(ckks::CkksContext& ctx, ServerConfig config,
                       const std::string& store_path, ckks::KeyBundle keys,
                       Clock clock)
    : ctx_(ctx), config_(std::move(config)), keys_(std::move(keys)),
      store_(store_path), clock_(std::move(clock)) {
  config_.policy.validate();
  config_.layout.validate();
  keys_msg_pk_ = ckks::serialize(keys_.pk);
  keys_msg_evk_ = ckks::serialize(keys_.evk);
}

fusion::StageVerdict AuthServer::decide_score(const ckks::Ciphertext& score,
                                              std::size_t stage) const {
  auto judge = fusion::make_local_judge(ctx_, keys_.sk, config_.policy);
  return judge(score, stage);
}

std::vector<Transcript> AuthServer::transcripts() const {
  std::lock_guard lock(transcripts_mutex_);
  return transcripts_;
}

void AuthServer::record_failure(const std::string& subject_id) {
  std::lock_guard lock(failures_mutex_);
  failures_[subject_id].push_back(clock_());
}

bool AuthServer::throttled(const std::string& subject_id) {
  std::lock_guard lock(failures_mutex_);
  auto it = failures_.find(subject_id);
  if (it == failures_.end()) return false;
  std::int64_t now = clock_();
  auto& q = it->second;
  while (!q.empty() && q.front() <= now - config_.retry_window_secs) q.pop_front();
  return q.size() >= config_.retry_limit;
}

void AuthServer::send_tracked(Transport& t, const ProtocolMessage& msg,
                              Transcript& tr) {
  if (config_.record_transcripts)
    tr.push_back({Direction::kSent, type_of(msg), msg});
  send_message(t, msg);
}

void AuthServer::serve_connection(Transport& t) {
  Transcript tr;
  SessionState session;
  send_tracked(t, KeysMsg{keys_msg_pk_, keys_msg_evk_}, tr);
  for (;;) {
    std::optional<ProtocolMessage> msg;
    try {
      msg = recv_message(t);
    } catch (const WireException& e) {
      // Framing is broken; report the class and drop the connection.
      send_tracked(t,
                   ErrorMsg{static_cast<std::uint16_t>(
                                100 + static_cast<std::uint16_t>(e.code)),
                            e.what()},
                   tr);
      break;
    }
    if (!msg) break;
    if (config_.record_transcripts)
      tr.push_back({Direction::kReceived, type_of(*msg), *msg});
    handle_message(t, *msg, session, tr);
  }
  if (config_.record_transcripts) {
    std::lock_guard lock(transcripts_mutex_);
    transcripts_.push_back(std::move(tr));
  }
}

void AuthServer::handle_message(Transport& t, const ProtocolMessage& msg,
                                SessionState& s, Transcript& tr) {
  auto send_error = [&](ProtoError code, const std::string& text) {
    send_tracked(t, ErrorMsg{static_cast<std::uint16_t>(code), text}, tr);
    s.phase = SessionState::Phase::kIdle;  // session CLOSED
    s.claim.clear();
  };

  if (const auto* enroll = std::get_if<EnrollMsg>(&msg)) {
    if (s.phase != SessionState::Phase::kIdle) {
      send_error(ProtoError::kBadState, "enroll during an open session");
      return;
    }
    ckks::Ciphertext ct;
    try {
      ct = ckks::deserialize_ciphertext(enroll->ct_fused, ctx_);
    } catch (const std::exception& e) {
      send_error(ProtoError::kMalformedCiphertext, e.what());
      return;
    }
    if (ct.level != ctx_.top_level() || ct.parts.size() != 2) {
      send_error(ProtoError::kMalformedCiphertext, "reference must be fresh");
      return;
    }
    if (store_.contains(enroll->subject_id) && !enroll->replace) {
      send_error(ProtoError::kDuplicateSubject,
                 "subject already enrolled (set replace)");
      return;
    }
    store_.put(enroll->subject_id, enroll->ct_fused);
    send_tracked(t, DecisionMsg{0, kVerdictAccept}, tr);  // enrollment ack
    return;
  }

  if (const auto* claim = std::get_if<VerifyClaimMsg>(&msg)) {
    if (s.phase != SessionState::Phase::kIdle) {
      send_error(ProtoError::kBadState, "claim during an open session");
      return;
    }
    if (throttled(claim->subject_id)) {
      send_error(ProtoError::kThrottled, "retry limit exceeded");
      return;
    }
    auto blob = store_.get(claim->subject_id);
    if (!blob) {
      send_error(ProtoError::kUnknownSubject, "no reference for claimed identity");
      return;
    }
    s.claim = claim->subject_id;
    s.stage = 1;
    s.phase = SessionState::Phase::kAwaitScore;
    send_tracked(t, ReferenceMsg{*blob}, tr);
    return;
  }

  if (const auto* score = std::get_if<ScoreMsg>(&msg)) {
    if (s.phase != SessionState::Phase::kAwaitScore) {
      send_error(ProtoError::kBadState, "no session awaiting a score");
      return;
    }
    if (score->stage != s.stage) {
      send_error(ProtoError::kBadState, "stale stage number");
      return;
    }
    ckks::Ciphertext ct;
    try {
      ct = ckks::deserialize_ciphertext(score->ct_score, ctx_);
    } catch (const std::exception& e) {
      send_error(ProtoError::kMalformedCiphertext, e.what());
      return;
    }
    if (ct.level != ctx_.top_level() - 1) {
      send_error(ProtoError::kMalformedCiphertext, "score ciphertext level mismatch");
      return;
    }
    fusion::StageVerdict verdict = decide_score(ct, s.stage);
    send_tracked(
        t, DecisionMsg{static_cast<std::uint8_t>(s.stage),
                       verdict.accept ? kVerdictAccept : kVerdictReject},
        tr);
    if (verdict.accept) {
      send_tracked(t, DecisionMsg{0, kVerdictAccept}, tr);
      s.phase = SessionState::Phase::kIdle;
      return;
    }
    if (s.stage < config_.policy.stage_count()) {
      ++s.stage;
      auto blob = store_.get(s.claim);
      send_tracked(t, ReferenceMsg{*blob}, tr);  // per-stage re-delivery
      return;
    }
    send_tracked(t, DecisionMsg{0, kVerdictReject}, tr);
    record_failure(s.claim);
    s.phase = SessionState::Phase::kIdle;
    return;
  }

  send_error(ProtoError::kBadRequest, "unexpected message type");
}

// ---------------------------------------------------------------------------
// Client
// ---------------------------------------------------------------------------

AuthClient::AuthClient(ckks::CkksContext& ctx, Transport& t,
                       linops::PackedLayout layout)
    : ctx_(ctx), transport_(t), layout_(layout) {
  layout_.validate();
}

void AuthClient::send_tracked(const ProtocolMessage& msg) {
  transcript_.push_back({Direction::kSent, type_of(msg), msg});
  send_message(transport_, msg);
}

ProtocolMessage AuthClient::expect_reply() {
  auto msg = recv_message(transport_);
  if (!msg) throw ProtocolFailure(ProtoError::kInternal, "connection closed");
  transcript_.push_back({Direction::kReceived, type_of(*msg), *msg});
  if (const auto* err = std::get_if<ErrorMsg>(&*msg))
    throw ProtocolFailure(static_cast<ProtoError>(err->code), err->text);
  return *msg;
}

void AuthClient::handshake() {
  auto msg = expect_reply();
  const auto* keys = std::get_if<KeysMsg>(&msg);
  if (!keys)
    throw ProtocolFailure(ProtoError::kBadState, "expected KEYS at session start");
  std::uint64_t fp = fnv1a(keys->pk_bytes);
  if (have_keys_ && fp == key_fingerprint_) return;  // cached
  pk_ = ckks::deserialize_public_key(keys->pk_bytes, ctx_);
  evk_ = ckks::deserialize_evaluation_keys(keys->evk_bytes, ctx_);
  key_fingerprint_ = fp;
  have_keys_ = true;
}

void AuthClient::enroll(const std::string& subject_id,
                        const std::vector<bio::Template>& modalities,
                        bool replace) {
  if (!have_keys_) throw ProtocolFailure(ProtoError::kBadState, "no server keys");
  if (modalities.size() != layout_.modality_count)
    throw ProtocolFailure(ProtoError::kBadRequest,
                          "modality count does not match the enrollment policy");
  for (const auto& t : modalities)
    if (t.size() != layout_.template_len)
      throw ProtocolFailure(ProtoError::kBadRequest, "template length mismatch");

  bio::FusedTemplate fused = bio::concatenate(modalities);
  ckks::Ciphertext ct = ctx_.encrypt(pk_, ctx_.encode(fused.vector));
  send_tracked(EnrollMsg{subject_id, replace, ckks::serialize(ct)});
  auto reply = expect_reply();
  const auto* ack = std::get_if<DecisionMsg>(&reply);
  if (!ack || ack->stage != 0 || ack->verdict != kVerdictAccept)
    throw ProtocolFailure(ProtoError::kInternal, "unexpected enrollment reply");
}

AuthClient::VerifyResult AuthClient::verify(
    const std::string& subject_id, const fusion::ProbeSupplier& probes,
    const std::vector<bio::Modality>& modality_order) {
  if (!have_keys_) throw ProtocolFailure(ProtoError::kBadState, "no server keys");

  send_tracked(VerifyClaimMsg{subject_id});
  auto msg = expect_reply();
  const auto* ref = std::get_if<ReferenceMsg>(&msg);
  if (!ref) throw ProtocolFailure(ProtoError::kBadState, "expected REFERENCE");
  ckks::Ciphertext reference = ckks::deserialize_ciphertext(ref->ct_ref, ctx_);

  // Client-side policy view: the order and mode are public, thresholds are
  // not; decisions come from the server.
  fusion::MatchPolicy view;
  view.name = "client-view";
  view.modality_order = modality_order;
  view.thresholds.assign(modality_order.size(), 0.0);
  view.mode = fusion::FusionMode::kSequentialOr;

  std::size_t m = modality_order.size();
  fusion::ScoreJudge remote_judge = [&](const ckks::Ciphertext& score,
                                        std::size_t stage) {
    send_tracked(ScoreMsg{static_cast<std::uint8_t>(stage), ckks::serialize(score)});
    auto reply = expect_reply();
    const auto* dec = std::get_if<DecisionMsg>(&reply);
    if (!dec || dec->stage != stage)
      throw ProtocolFailure(ProtoError::kBadState, "unexpected decision reply");
    fusion::StageVerdict v;
    v.accept = dec->verdict == kVerdictAccept;
    if (!v.accept && stage < m) {
      // Stage j+1 opens with the reference re-delivery; the client keeps its
      // cumulatively rotated copy, so the blob is acknowledged and dropped.
      auto next = expect_reply();
      if (!std::holds_alternative<ReferenceMsg>(next))
        throw ProtocolFailure(ProtoError::kBadState, "expected stage reference");
    }
    return v;
  };

  fusion::FusionMatcher matcher(ctx_, pk_, evk_, layout_);
  VerifyResult result;
  result.outcome = matcher.verify_incremental(reference, probes, view, remote_judge);
  result.accepted = result.outcome.accepted;
  result.stages_used = result.outcome.stages_used;

  auto final_msg = expect_reply();
  const auto* final_dec = std::get_if<DecisionMsg>(&final_msg);
  if (!final_dec || final_dec->stage != 0)
    throw ProtocolFailure(ProtoError::kBadState, "expected final decision");
  bool final_accept = final_dec->verdict == kVerdictAccept;
  if (final_accept != result.accepted)
    throw ProtocolFailure(ProtoError::kInternal,
                          "final decision contradicts stage decisions");
  return result;
}

}  // namespace ambfhe::proto
