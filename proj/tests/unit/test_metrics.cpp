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

#include <cmath>
#include <limits>
#include <stdexcept>

#include "ambfhe/ckks/rng.hpp"
#include "ambfhe/metrics/metrics.hpp"
#include "doctest.h"

using namespace ambfhe;
using namespace ambfhe::metrics;

TEST_CASE("threshold_at_fmr: exhaustive count oracle on 1..100") {
  ScoreSet s;
  for (int i = 1; i <= 100; ++i) s.nonmated.push_back(i);
  s.mated = {0.5};

  // Largest tau with strictly-below fraction <= 1%: tau = 2 (exactly one
  // score below).
  CHECK(threshold_at_fmr(s, 0.01) == 2.0);

  // Exhaustive-check the definition for a few targets.
  for (double fmr : {0.001, 0.05, 0.5, 0.99}) {
    double tau = threshold_at_fmr(s, fmr);
    double below = 0;
    for (double v : s.nonmated)
      if (v < tau) ++below;
    CHECK(below / 100.0 <= fmr);
    // No larger candidate satisfies the bound.
    for (double v : s.nonmated) {
      if (v <= tau) continue;
      double b = 0;
      for (double w : s.nonmated)
        if (w < v) ++b;
      CHECK(b / 100.0 > fmr);
    }
  }

  // fmr -> 0+ collapses to the minimum.
  CHECK(threshold_at_fmr(s, 1e-9) == 1.0);

  // Degenerate distribution: all equal.
  ScoreSet flat;
  flat.nonmated.assign(50, 3.25);
  CHECK(threshold_at_fmr(flat, 0.01) == 3.25);

  CHECK_THROWS_AS(threshold_at_fmr(ScoreSet{}, 0.01), std::invalid_argument);
  CHECK_THROWS_AS(threshold_at_fmr(s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(threshold_at_fmr(s, 1.0), std::invalid_argument);
}

TEST_CASE("empirical FMR at the calibrated threshold stays within target") {
  ckks::ChaChaRng rng(23);
  ScoreSet s;
  for (int i = 0; i < 5000; ++i) s.nonmated.push_back(2.0 + rng.normal(0.1));
  s.mated = {0.5};
  for (double fmr : {0.0001, 0.001, 0.01, 0.1}) {
    double tau = threshold_at_fmr(s, fmr);
    double below = 0;
    for (double v : s.nonmated)
      if (v < tau) ++below;
    CHECK(below / 5000.0 <= fmr);
  }
}

TEST_CASE("eer: separated, chance-level and oracle-swept cases") {
  ScoreSet separated;
  separated.mated = {0.1, 0.2, 0.3};
  separated.nonmated = {1.1, 1.2, 1.3};
  CHECK(eer(separated).eer == 0.0);

  ScoreSet identical;
  for (int i = 0; i < 50; ++i) {
    identical.mated.push_back(i);
    identical.nonmated.push_back(i);
  }
  CHECK(eer(identical).eer == doctest::Approx(0.5).epsilon(0.02));

  // Interleaved toy lists against an exhaustive threshold sweep.
  ScoreSet toy;
  toy.mated = {0.1, 0.4, 0.6, 0.9, 1.4};
  toy.nonmated = {0.5, 0.8, 1.0, 1.2, 1.3, 1.7};
  EerResult got = eer(toy);

  double best_gap = 2.0, best_eer = 1.0;
  std::vector<double> pool = toy.mated;
  pool.insert(pool.end(), toy.nonmated.begin(), toy.nonmated.end());
  pool.push_back(99.0);
  for (double tau : pool) {
    double fm = 0, fnm = 0;
    for (double v : toy.nonmated) fm += v < tau ? 1 : 0;
    for (double v : toy.mated) fnm += v >= tau ? 1 : 0;
    fm /= toy.nonmated.size();
    fnm /= toy.mated.size();
    if (std::abs(fm - fnm) < best_gap) {
      best_gap = std::abs(fm - fnm);
      best_eer = (fm + fnm) / 2.0;
    }
  }
  CHECK(got.eer == doctest::Approx(best_eer).epsilon(1e-12));

  CHECK_THROWS_AS(eer(ScoreSet{}), std::invalid_argument);
}

TEST_CASE("score deviation statistics") {
  CHECK(score_deviation({1, 2, 3}, {1, 2, 3}).max == 0.0);
  CHECK(score_deviation({1, 2, 3}, {1, 2, 3}).mean == 0.0);

  Deviation d = score_deviation({1.0}, {1.5});
  CHECK(d.mean == d.max);
  CHECK(d.max == 0.5);

  Deviation e = score_deviation({0, 1, 2}, {0.1, 1.0, 1.8});
  CHECK(e.max == doctest::Approx(0.2));
  CHECK(e.mean == doctest::Approx(0.1));

  CHECK_THROWS_AS(score_deviation({1, 2}, {1}), std::invalid_argument);
}

namespace {

struct MiniDb {
  std::vector<bio::SubjectRecord> db;
  bio::ComparisonPairs pairs;
  StageScorer scorer;

  explicit MiniDb(std::uint64_t seed, std::size_t subjects = 40) {
    bio::SyntheticConfig cfg;
    cfg.n_subjects = subjects;
    cfg.d = 64;
    cfg.sigmas = {0.10, 0.12};
    cfg.seed = seed;
    db = bio::generate_synthetic_db(cfg);
    pairs = bio::mated_and_nonmated_pairs(db);
    scorer = plain_stage_scorer(db, {0, 1});
  }
};

}  // namespace

TEST_CASE("cascade presentation extremes: always-accept and never-accept") {
  MiniDb mini(7);
  double inf = std::numeric_limits<double>::infinity();

  auto always = cascade_presentations(mini.pairs, mini.scorer, {inf, inf});
  CHECK(always[0] == mini.pairs.mated.size());
  CHECK(always[1] == 0);  // stage 2 never needed: 100% of the budget saved

  auto never = cascade_presentations(mini.pairs, mini.scorer, {-inf, -inf});
  CHECK(never[0] == mini.pairs.mated.size());
  CHECK(never[1] == mini.pairs.mated.size());  // 0% saved
}

TEST_CASE("saved presentations: monotone in the FMR target") {
  MiniDb mini(11, 60);
  auto rep = saved_presentations(mini.pairs, mini.scorer, 2,
                                 {0.0001, 0.001, 0.01, 0.1}, "amb-fhe-1");
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.mated_pairs == mini.pairs.mated.size());
  for (const auto& row : rep.rows) {
    CHECK(row.presentations[0] == rep.mated_pairs);  // stage 1 always runs
    CHECK(row.denominator == rep.mated_pairs);
    CHECK(row.saved_pct >= 0.0);
    CHECK(row.saved_pct <= 100.0);
  }
  for (std::size_t i = 1; i < rep.rows.size(); ++i) {
    CHECK(rep.rows[i].saved >= rep.rows[i - 1].saved);
    CHECK(rep.rows[i].thresholds[0] >= rep.rows[i - 1].thresholds[0]);
  }
  // Text rendering mentions the policy and the explicit denominator.
  std::string txt = render_saved_report(rep, {"iris", "fingerprint"});
  CHECK(txt.find("amb-fhe-1") != std::string::npos);
  CHECK(txt.find("(of ") != std::string::npos);
}

TEST_CASE("fused EER beats uni-modal EERs on synthetic data") {
  MiniDb mini(13, 80);
  auto stage_scores = cumulative_stage_scores(mini.pairs, mini.scorer, 2);
  // Stage-1 set is the first uni-modal system; build the second alone too.
  ScoreSet uni2;
  for (const auto& [a, b] : mini.pairs.mated)
    uni2.mated.push_back(mini.scorer(a, b, 1));
  for (const auto& [a, b] : mini.pairs.nonmated)
    uni2.nonmated.push_back(mini.scorer(a, b, 1));

  double e1 = eer(stage_scores[0]).eer;
  double e2 = eer(uni2).eer;
  double fused = eer(stage_scores[1]).eer;  // cumulative over both stages
  CHECK(fused <= e1);
  CHECK(fused <= e2);
}
