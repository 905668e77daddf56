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

#include "ambfhe/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace ambfhe::metrics {

double threshold_at_fmr(const ScoreSet& scores, double fmr) {
  if (scores.nonmated.empty()) throw std::invalid_argument("empty non-mated set");
  if (!(fmr > 0.0) || !(fmr < 1.0)) throw std::invalid_argument("fmr must be in (0,1)");
  std::vector<double> nm = scores.nonmated;
  std::sort(nm.begin(), nm.end());
  double n = static_cast<double>(nm.size());
  // Walk candidates from the largest down; count strictly below via the
  // first occurrence index.
  for (std::size_t i = nm.size(); i-- > 0;) {
    if (i > 0 && nm[i - 1] == nm[i]) continue;  // skip duplicate candidates
    double below = static_cast<double>(i);      // values strictly below nm[i]
    if (below / n <= fmr) return nm[i];
  }
  return nm.front();
}

EerResult eer(const ScoreSet& scores) {
  if (scores.mated.empty() || scores.nonmated.empty())
    throw std::invalid_argument("both score lists must be nonempty");
  std::vector<double> pooled = scores.mated;
  pooled.insert(pooled.end(), scores.nonmated.begin(), scores.nonmated.end());
  std::sort(pooled.begin(), pooled.end());
  pooled.erase(std::unique(pooled.begin(), pooled.end()), pooled.end());
  pooled.push_back(pooled.back() + 1.0);  // a threshold above every score

  std::vector<double> mated = scores.mated;
  std::vector<double> nonmated = scores.nonmated;
  std::sort(mated.begin(), mated.end());
  std::sort(nonmated.begin(), nonmated.end());
  double nm = static_cast<double>(mated.size());
  double nn = static_cast<double>(nonmated.size());

  EerResult best;
  double best_gap = 2.0;
  for (double tau : pooled) {
    // Accept iff delta < tau.
    double fm = static_cast<double>(
                    std::lower_bound(nonmated.begin(), nonmated.end(), tau) -
                    nonmated.begin()) /
                nn;
    double fnm = static_cast<double>(
                     mated.end() -
                     std::lower_bound(mated.begin(), mated.end(), tau)) /
                 nm;
    double gap = std::abs(fm - fnm);
    if (gap < best_gap) {
      best_gap = gap;
      best.threshold = tau;
      best.fmr = fm;
      best.fnmr = fnm;
      best.eer = (fm + fnm) / 2.0;
    }
  }
  return best;
}

Deviation score_deviation(const std::vector<double>& plain,
                          const std::vector<double>& encrypted) {
  if (plain.size() != encrypted.size())
    throw std::invalid_argument("score lists must be index-aligned");
  if (plain.empty()) throw std::invalid_argument("empty score lists");
  Deviation d;
  for (std::size_t i = 0; i < plain.size(); ++i) {
    double e = std::abs(plain[i] - encrypted[i]);
    d.mean += e;
    d.max = std::max(d.max, e);
  }
  d.mean /= static_cast<double>(plain.size());
  return d;
}

StageScorer plain_stage_scorer(const std::vector<bio::SubjectRecord>& db,
                               const std::vector<std::size_t>& order_positions) {
  return [&db, order_positions](const bio::SampleRef& a, const bio::SampleRef& b,
                                std::size_t stage_pos) {
    std::size_t mod = order_positions.at(stage_pos);
    const bio::Template& ta = db.at(a.subject).samples.at(mod).at(a.sample);
    const bio::Template& tb = db.at(b.subject).samples.at(mod).at(b.sample);
    return bio::plain_dissimilarity(ta, tb);
  };
}

std::vector<ScoreSet> cumulative_stage_scores(const bio::ComparisonPairs& pairs,
                                              const StageScorer& scorer,
                                              std::size_t stages) {
  std::vector<ScoreSet> out(stages);
  for (std::size_t j = 0; j < stages; ++j)
    out[j].label = "stage-" + std::to_string(j + 1);
  auto run = [&](const std::vector<std::pair<bio::SampleRef, bio::SampleRef>>& list,
                 bool mated) {
    for (const auto& [a, b] : list) {
      double cum = 0.0;
      for (std::size_t j = 0; j < stages; ++j) {
        cum += scorer(a, b, j);
        (mated ? out[j].mated : out[j].nonmated).push_back(cum);
      }
    }
  };
  run(pairs.mated, true);
  run(pairs.nonmated, false);
  return out;
}

std::vector<std::size_t> cascade_presentations(const bio::ComparisonPairs& pairs,
                                               const StageScorer& scorer,
                                               const std::vector<double>& thresholds) {
  std::size_t stages = thresholds.size();
  std::vector<std::size_t> presentations(stages, 0);
  for (const auto& [a, b] : pairs.mated) {
    double cum = 0.0;
    for (std::size_t j = 0; j < stages; ++j) {
      ++presentations[j];
      cum += scorer(a, b, j);
      if (cum < thresholds[j]) break;  // accepted, later stages saved
    }
  }
  return presentations;
}

SavedPresentationsReport saved_presentations(const bio::ComparisonPairs& pairs,
                                             const StageScorer& scorer,
                                             std::size_t stages,
                                             const std::vector<double>& fmr_targets,
                                             const std::string& policy_name) {
  if (stages < 1) throw std::invalid_argument("need at least one stage");
  if (fmr_targets.empty()) throw std::invalid_argument("no FMR targets");
  std::vector<ScoreSet> calib = cumulative_stage_scores(pairs, scorer, stages);

  SavedPresentationsReport rep;
  rep.policy_name = policy_name;
  rep.mated_pairs = pairs.mated.size();
  rep.baseline.assign(stages, pairs.mated.size());

  for (double fmr : fmr_targets) {
    SavedRow row;
    row.fmr = fmr;
    for (std::size_t j = 0; j < stages; ++j)
      row.thresholds.push_back(threshold_at_fmr(calib[j], fmr));
    row.presentations = cascade_presentations(pairs, scorer, row.thresholds);
    row.denominator = (stages - 1) * pairs.mated.size();
    std::size_t actual = 0;
    for (std::size_t j = 1; j < stages; ++j) actual += row.presentations[j];
    row.saved = row.denominator - actual;
    row.saved_pct = row.denominator == 0
                        ? 0.0
                        : 100.0 * static_cast<double>(row.saved) /
                              static_cast<double>(row.denominator);
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

std::string render_saved_report(const SavedPresentationsReport& report,
                                const std::vector<std::string>& stage_names) {
  std::ostringstream os;
  char buf[160];
  os << "policy: " << report.policy_name
     << "   mated comparisons: " << report.mated_pairs << "\n";
  os << "  system          FMR(%)   ";
  for (const auto& n : stage_names) {
    std::snprintf(buf, sizeof(buf), "%12s", n.c_str());
    os << buf;
  }
  os << "        saved  saved(%)  (denominator)\n";

  std::snprintf(buf, sizeof(buf), "  %-15s %-8s ", "unconditional", "-");
  os << buf;
  for (std::size_t b : report.baseline) {
    std::snprintf(buf, sizeof(buf), "%12zu", b);
    os << buf;
  }
  os << "            -         -\n";

  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof(buf), "  %-15s %-8.4g ", report.policy_name.c_str(),
                  row.fmr * 100.0);
    os << buf;
    for (std::size_t p : row.presentations) {
      std::snprintf(buf, sizeof(buf), "%12zu", p);
      os << buf;
    }
    std::snprintf(buf, sizeof(buf), " %12zu %9.2f  (of %zu)\n", row.saved,
                  row.saved_pct, row.denominator);
    os << buf;
  }
  return os.str();
}

}  // namespace ambfhe::metrics
