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

#include "ambfhe/fusion/matcher.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ambfhe::fusion {

void MatchPolicy::validate() const {
  if (modality_order.empty()) throw std::invalid_argument("empty modality order");
  if (mode == FusionMode::kSequentialOr) {
    if (thresholds.size() != modality_order.size())
      throw std::invalid_argument("sequential policy needs one threshold per stage");
  } else {
    if (thresholds.size() != 1)
      throw std::invalid_argument("unconditional policy takes exactly one threshold");
  }
  for (double t : thresholds)
    if (std::isnan(t)) throw std::invalid_argument("threshold is NaN");
}

double dissimilarity_from_ip(double s, std::size_t stages) {
  return 2.0 * static_cast<double>(stages) - 2.0 * s;
}

ScoreJudge make_local_judge(const CkksContext& ctx, const ckks::SecretKey& sk,
                            const MatchPolicy& policy) {
  return [&ctx, &sk, policy](const Ciphertext& score, std::size_t stage) {
    std::size_t idx = policy.mode == FusionMode::kUnconditionalAnd ? 0 : stage - 1;
    double tau = policy.thresholds.at(idx);
    std::size_t j = policy.mode == FusionMode::kUnconditionalAnd
                        ? policy.stage_count()
                        : stage;
    double s = ctx.decode(ctx.decrypt(sk, score)).at(0);
    double delta = dissimilarity_from_ip(s, j);
    StageVerdict v;
    v.accept = accept_dissimilarity(delta, tau);
    v.delta = delta;
    return v;
  };
}

FusionMatcher::FusionMatcher(CkksContext& ctx, const PublicKey& pk,
                             const EvaluationKeys& evk,
                             linops::PackedLayout layout)
    : ctx_(ctx), pk_(pk), evk_(evk), layout_(layout) {
  layout_.validate();
  if (layout_.slot_capacity != ctx.slot_count())
    throw std::invalid_argument("layout built for a different ring");
}

Ciphertext FusionMatcher::encrypt_probe(const bio::Template& probe,
                                        OpCounter* counter) const {
  if (probe.size() != layout_.template_len)
    throw std::invalid_argument("probe length does not match layout");
  ckks::Plaintext pt = ctx_.encode(probe.vector);  // zero-padded to [0, d)
  if (counter) ++counter->encryptions;
  return ctx_.encrypt(pk_, pt);
}

Ciphertext FusionMatcher::encrypt_fused(const bio::FusedTemplate& fused,
                                        OpCounter* counter) const {
  if (fused.vector.size() != layout_.template_len * layout_.modality_count)
    throw std::invalid_argument("fused probe does not match layout");
  ckks::Plaintext pt = ctx_.encode(fused.vector);
  if (counter) ++counter->encryptions;
  return ctx_.encrypt(pk_, pt);
}

VerificationOutcome FusionMatcher::verify_incremental(
    const Ciphertext& reference, const ProbeSupplier& probes,
    const MatchPolicy& policy, const ScoreJudge& judge) const {
  policy.validate();
  if (policy.mode != FusionMode::kSequentialOr)
    throw std::invalid_argument("verify_incremental requires a sequential policy");
  if (policy.stage_count() > layout_.modality_count)
    throw std::invalid_argument("policy has more stages than the packed layout");

  VerificationOutcome out;
  ckks::Evaluator eval(ctx_, &out.ops);
  std::size_t m = policy.stage_count();

  Ciphertext aligned = reference;
  std::optional<Ciphertext> delta_ct;
  for (std::size_t j = 1; j <= m; ++j) {
    bio::Template probe = probes(j);
    Ciphertext probe_ct = encrypt_probe(probe, &out.ops);
    aligned = linops::block_align(eval, aligned, j, layout_, evk_);

    Ciphertext stage_ip;
    if (j == 1) {
      stage_ip = linops::inner_product(eval, probe_ct, aligned, evk_);
    } else {
      // The product is zero outside [0, d), so folding the d-block leaves
      // the cumulative score exact in slot 0 at strictly lower cost than a
      // fused recomputation.
      Ciphertext prod = eval.mul(probe_ct, aligned, evk_);
      stage_ip = linops::rotate_and_sum_block(eval, prod, layout_.template_len, evk_);
    }
    delta_ct = linops::accumulate_score(eval, delta_ct, stage_ip);

    StageVerdict verdict = judge(*delta_ct, j);
    StageResult sr;
    sr.stage = j;
    if (verdict.delta.has_value()) {
      sr.dissimilarity = *verdict.delta;
      sr.cumulative_ip = (2.0 * static_cast<double>(j) - *verdict.delta) / 2.0;
    } else {
      sr.dissimilarity = std::numeric_limits<double>::quiet_NaN();
      sr.cumulative_ip = std::numeric_limits<double>::quiet_NaN();
    }
    sr.decision = verdict.accept ? StageDecision::kAccept
                  : j < m        ? StageDecision::kContinue
                                 : StageDecision::kReject;
    out.stages.push_back(sr);
    out.stages_used = j;
    if (verdict.accept) {
      out.accepted = true;
      return out;  // short-circuit: later probes are never requested
    }
  }
  out.accepted = false;
  return out;
}

VerificationOutcome FusionMatcher::verify_unconditional(
    const Ciphertext& reference, const bio::FusedTemplate& probe,
    const MatchPolicy& policy, const ScoreJudge& judge) const {
  policy.validate();
  if (policy.mode != FusionMode::kUnconditionalAnd)
    throw std::invalid_argument("verify_unconditional requires the AND policy");
  if (probe.parts.size() != policy.stage_count() ||
      policy.stage_count() != layout_.modality_count)
    throw std::invalid_argument("probe modality count does not match policy");

  VerificationOutcome out;
  ckks::Evaluator eval(ctx_, &out.ops);
  Ciphertext probe_ct = encrypt_fused(probe, &out.ops);
  Ciphertext score = linops::inner_product(eval, probe_ct, reference, evk_);

  StageVerdict verdict = judge(score, policy.stage_count());
  StageResult sr;
  sr.stage = policy.stage_count();
  sr.dissimilarity = verdict.delta.value_or(std::numeric_limits<double>::quiet_NaN());
  sr.cumulative_ip =
      verdict.delta ? (2.0 * static_cast<double>(policy.stage_count()) - *verdict.delta) / 2.0
                    : std::numeric_limits<double>::quiet_NaN();
  sr.decision = verdict.accept ? StageDecision::kAccept : StageDecision::kReject;
  out.stages.push_back(sr);
  out.stages_used = policy.stage_count();
  out.accepted = verdict.accept;
  return out;
}

}  // namespace ambfhe::fusion
