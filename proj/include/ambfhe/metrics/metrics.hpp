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

#ifndef AMBFHE_METRICS_METRICS_HPP_
#define AMBFHE_METRICS_METRICS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "ambfhe/bio/synthetic.hpp"

namespace ambfhe::metrics {

// Mated / non-mated dissimilarity collections (lower = more similar).
struct ScoreSet {
  std::vector<double> mated;
  std::vector<double> nonmated;
  std::string label;
};

// Largest threshold tau such that the fraction of non-mated scores strictly
// below tau stays <= fmr (empirical quantile, lower interpolation; matching
// the strict delta < tau accept rule).
double threshold_at_fmr(const ScoreSet& scores, double fmr);

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
  double fmr = 0.0;
  double fnmr = 0.0;
};

// Threshold sweep over the pooled scores; returns (FMR+FNMR)/2 at the
// crossing point.
EerResult eer(const ScoreSet& scores);

struct Deviation {
  double mean = 0.0;
  double max = 0.0;
};

// Elementwise |plain - encrypted| statistics; the lists must be
// index-aligned.
Deviation score_deviation(const std::vector<double>& plain,
                          const std::vector<double>& encrypted);

// Per-stage dissimilarity increment for a comparison pair. stage_pos indexes
// the policy's modality order; implementations score exactly that modality.
using StageScorer = std::function<double(const bio::SampleRef& a,
                                         const bio::SampleRef& b,
                                         std::size_t stage_pos)>;

// Plaintext scorer over a database, following a modality order given as
// positions into SubjectRecord::samples.
StageScorer plain_stage_scorer(const std::vector<bio::SubjectRecord>& db,
                               const std::vector<std::size_t>& order_positions);

// Cumulative dissimilarity score sets per stage (stage j pools the sum of
// the first j per-modality dissimilarities) for threshold calibration.
std::vector<ScoreSet> cumulative_stage_scores(const bio::ComparisonPairs& pairs,
                                              const StageScorer& scorer,
                                              std::size_t stages);

// Per-stage presentation counts when cascading every mated pair against a
// fixed per-stage threshold vector (stage j runs only if stage j-1 did not
// accept).
std::vector<std::size_t> cascade_presentations(const bio::ComparisonPairs& pairs,
                                               const StageScorer& scorer,
                                               const std::vector<double>& thresholds);

struct SavedRow {
  double fmr = 0.0;                        // fraction, not percent
  std::vector<double> thresholds;          // tau_j at this FMR target
  std::vector<std::size_t> presentations;  // per stage, mated pairs only
  std::size_t saved = 0;                   // baseline minus actual, stages >= 2
  std::size_t denominator = 0;             // stage >= 2 presentation budget
  double saved_pct = 0.0;
};

struct SavedPresentationsReport {
  std::string policy_name;
  std::size_t mated_pairs = 0;
  std::vector<std::size_t> baseline;  // unconditional: every stage presented
  std::vector<SavedRow> rows;
};

// Runs the sequential cascade over all mated pairs at each FMR target and
// counts modality presentations per stage. Thresholds are calibrated on the
// non-mated cumulative distributions with the same scorer.
SavedPresentationsReport saved_presentations(const bio::ComparisonPairs& pairs,
                                             const StageScorer& scorer,
                                             std::size_t stages,
                                             const std::vector<double>& fmr_targets,
                                             const std::string& policy_name);

// Aligned text rendering of the saved-presentations report, with stage
// headers taken from `stage_names`.
std::string render_saved_report(const SavedPresentationsReport& report,
                                const std::vector<std::string>& stage_names);

}  // namespace ambfhe::metrics

#endif  // AMBFHE_METRICS_METRICS_HPP_
