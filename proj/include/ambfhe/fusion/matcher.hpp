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

#ifndef AMBFHE_FUSION_MATCHER_HPP_
#define AMBFHE_FUSION_MATCHER_HPP_

#include <functional>
#include <optional>
#include <string>

#include "ambfhe/bio/template.hpp"
#include "ambfhe/linops/linops.hpp"

namespace ambfhe::fusion {

using ckks::Ciphertext;
using ckks::CkksContext;
using ckks::EvaluationKeys;
using ckks::OpCounter;
using ckks::PublicKey;

enum class FusionMode { kSequentialOr, kUnconditionalAnd };

// Modality order plus per-stage dissimilarity thresholds. "amb-fhe-1" is
// the iris-first sequential policy, "amb-fhe-2" fingerprint-first,
// "multi-and" the unconditional fused baseline.
struct MatchPolicy {
  std::string name;
  std::vector<bio::Modality> modality_order;
  std::vector<double> thresholds;  // tau_1..tau_m (one entry for AND)
  FusionMode mode = FusionMode::kSequentialOr;

  std::size_t stage_count() const { return modality_order.size(); }
  void validate() const;
};

enum class StageDecision { kAccept, kContinue, kReject };

struct StageResult {
  std::size_t stage = 0;        // 1-based
  double cumulative_ip = 0.0;   // s; NaN when only the remote verdict is known
  double dissimilarity = 0.0;   // delta_j = 2j - 2s; NaN likewise
  StageDecision decision = StageDecision::kReject;
};

struct VerificationOutcome {
  bool accepted = false;
  std::size_t stages_used = 0;
  std::vector<StageResult> stages;
  OpCounter ops;  // homomorphic work, probe encryptions included
};

// delta_j = 2j - 2s for unit-norm templates.
double dissimilarity_from_ip(double s, std::size_t stages);

// Strict accept rule: a tie rejects.
inline bool accept_dissimilarity(double delta, double tau) { return delta < tau; }

// Supplies probe template j (1-based) on demand; called only when stage j
// is actually reached, so call counts observe the saved presentations.
using ProbeSupplier = std::function<bio::Template(std::size_t stage)>;

// The key-holder seam. The engine hands the encrypted cumulative score to
// the judge; the judge (server role, or a remote peer) decides. delta is
// set when the judge can see the plaintext score, absent otherwise.
struct StageVerdict {
  bool accept = false;
  std::optional<double> delta;
};
using ScoreJudge = std::function<StageVerdict(const Ciphertext& score,
                                              std::size_t stage)>;

// Builds a local judge around the secret key and the policy thresholds
// (reads slot 0, applies the strict delta < tau_j rule).
ScoreJudge make_local_judge(const CkksContext& ctx, const ckks::SecretKey& sk,
                            const MatchPolicy& policy);

// Sequential cascaded verification over an encrypted concatenated reference.
// Stage 1 runs the full inner product; later stages rotate the reference by
// d, multiply, fold the d-block and accumulate. ACCEPT short-circuits: probe
// j+1 is never requested.
class FusionMatcher {
 public:
  FusionMatcher(CkksContext& ctx, const PublicKey& pk, const EvaluationKeys& evk,
                linops::PackedLayout layout);

  VerificationOutcome verify_incremental(const Ciphertext& reference,
                                         const ProbeSupplier& probes,
                                         const MatchPolicy& policy,
                                         const ScoreJudge& judge) const;

  VerificationOutcome verify_unconditional(const Ciphertext& reference,
                                           const bio::FusedTemplate& probe,
                                           const MatchPolicy& policy,
                                           const ScoreJudge& judge) const;

  // Zero-pads the probe for stage j into slots [0, d) and encrypts it.
  Ciphertext encrypt_probe(const bio::Template& probe, OpCounter* counter) const;
  Ciphertext encrypt_fused(const bio::FusedTemplate& fused, OpCounter* counter) const;

  const linops::PackedLayout& layout() const { return layout_; }

 private:
  CkksContext& ctx_;
  const PublicKey& pk_;
  const EvaluationKeys& evk_;
  linops::PackedLayout layout_;
};

}  // namespace ambfhe::fusion

#endif  // AMBFHE_FUSION_MATCHER_HPP_
