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
#include <cstdio>
#include <filesystem>

#include "ambfhe/bio/dataset_io.hpp"
#include "ambfhe/ckks/rng.hpp"
#include "doctest.h"

using namespace ambfhe::bio;

TEST_CASE("normalize: 3-4-5 triangle, idempotence, norm property, errors") {
  Template t = normalize(std::vector<double>{3, 4, 0, 0});
  CHECK(t.vector[0] == doctest::Approx(0.6));
  CHECK(t.vector[1] == doctest::Approx(0.8));

  Template again = normalize(t.vector);
  for (std::size_t i = 0; i < t.size(); ++i)
    CHECK(again.vector[i] == doctest::Approx(t.vector[i]).epsilon(1e-12));

  ambfhe::ckks::ChaChaRng rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(64);
    for (auto& x : v) x = rng.normal(2.0);
    double norm = 0;
    for (double x : normalize(v).vector) norm += x * x;
    CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-9);
  }

  CHECK_THROWS_AS(normalize(std::vector<double>{0, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(normalize(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("concatenate preserves order and length") {
  Template a = normalize(std::vector<double>{1, 0, 0, 0}, Modality::iris());
  Template b = normalize(std::vector<double>{0, 1, 0, 0}, Modality::fingerprint());
  Template c = normalize(std::vector<double>{0, 0, 1, 0}, Modality::other(0));

  FusedTemplate one = concatenate({a});
  CHECK(one.vector == a.vector);

  FusedTemplate f = concatenate({a, b, c});
  CHECK(f.vector.size() == 12);
  CHECK(f.vector[0] == 1.0);
  CHECK(f.vector[5] == 1.0);
  CHECK(f.vector[10] == 1.0);

  CHECK_THROWS_AS(concatenate({}), std::invalid_argument);
}

TEST_CASE("512+512 concatenation has length 1024") {
  std::vector<double> v(512, 1.0);
  FusedTemplate f = concatenate({normalize(v), normalize(v, Modality::fingerprint())});
  CHECK(f.vector.size() == 1024);
}

TEST_CASE("dissimilarity is the squared Euclidean distance in [0,4]") {
  ambfhe::ckks::ChaChaRng rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> u(32), v(32);
    for (auto& x : u) x = rng.normal(1.0);
    for (auto& x : v) x = rng.normal(1.0);
    Template tu = normalize(u), tv = normalize(v);
    double delta = plain_dissimilarity(tu, tv);
    double sed = 0;
    for (std::size_t i = 0; i < 32; ++i) {
      double d = tu.vector[i] - tv.vector[i];
      sed += d * d;
    }
    CHECK(delta == doctest::Approx(sed).epsilon(1e-10));
    CHECK(delta >= 0.0);
    CHECK(delta <= 4.0 + 1e-12);
  }
}

TEST_CASE("synthetic generator is deterministic and sane") {
  SyntheticConfig cfg;
  cfg.n_subjects = 12;
  cfg.d = 32;
  cfg.seed = 42;

  auto db1 = generate_synthetic_db(cfg);
  auto db2 = generate_synthetic_db(cfg);
  REQUIRE(db1.size() == 12);
  for (std::size_t s = 0; s < db1.size(); ++s) {
    CHECK(db1[s].subject_id == db2[s].subject_id);
    REQUIRE(db1[s].samples.size() == 2);
    for (std::size_t m = 0; m < 2; ++m) {
      REQUIRE(db1[s].samples[m].size() == db2[s].samples[m].size());
      CHECK(db1[s].samples[m].size() >= cfg.samples_min);
      CHECK(db1[s].samples[m].size() <= cfg.samples_max);
      for (std::size_t k = 0; k < db1[s].samples[m].size(); ++k)
        CHECK(db1[s].samples[m][k].vector == db2[s].samples[m][k].vector);
    }
  }

  // Degenerate noise: mated dissimilarity collapses to zero.
  SyntheticConfig tight = cfg;
  tight.sigmas = {1e-9, 1e-9};
  auto db3 = generate_synthetic_db(tight);
  double delta = plain_dissimilarity(db3[0].samples[0][0], db3[0].samples[0][1]);
  CHECK(delta < 1e-12);

  SyntheticConfig bad = cfg;
  bad.n_subjects = 1;
  CHECK_THROWS_AS(generate_synthetic_db(bad), std::invalid_argument);
  bad = cfg;
  bad.sigmas = {0.1, -1.0};
  CHECK_THROWS_AS(generate_synthetic_db(bad), std::invalid_argument);
}

TEST_CASE("pair enumeration matches the combinatorial count") {
  SyntheticConfig cfg;
  cfg.n_subjects = 2;
  cfg.d = 8;
  cfg.samples_min = cfg.samples_max = 2;
  cfg.seed = 3;
  auto db = generate_synthetic_db(cfg);
  auto pairs = mated_and_nonmated_pairs(db);
  CHECK(pairs.mated.size() == 2);     // C(2,2) per subject x 2 subjects
  CHECK(pairs.nonmated.size() == 1);  // C(2,2) across subjects

  // Disjoint by construction: mated pairs share a subject, non-mated never do.
  for (const auto& [a, b] : pairs.mated) CHECK(a.subject == b.subject);
  for (const auto& [a, b] : pairs.nonmated) CHECK(a.subject != b.subject);

  // n subjects with exactly s samples: n*C(s,2) mated, C(n,2) non-mated.
  cfg.n_subjects = 7;
  cfg.samples_min = cfg.samples_max = 4;
  auto db2 = generate_synthetic_db(cfg);
  auto pairs2 = mated_and_nonmated_pairs(db2);
  CHECK(pairs2.mated.size() == 7 * 6);     // 7 * C(4,2)
  CHECK(pairs2.nonmated.size() == 21);     // C(7,2)
}

TEST_CASE("mated scores sit below non-mated scores on average") {
  SyntheticConfig cfg;
  cfg.n_subjects = 30;
  cfg.d = 64;
  cfg.seed = 11;
  auto db = generate_synthetic_db(cfg);
  auto pairs = mated_and_nonmated_pairs(db);
  double mated_mean = 0, nonmated_mean = 0;
  for (const auto& [a, b] : pairs.mated)
    mated_mean += plain_dissimilarity(db[a.subject].samples[0][a.sample],
                                      db[b.subject].samples[0][b.sample]);
  for (const auto& [a, b] : pairs.nonmated)
    nonmated_mean += plain_dissimilarity(db[a.subject].samples[0][a.sample],
                                         db[b.subject].samples[0][b.sample]);
  mated_mean /= static_cast<double>(pairs.mated.size());
  nonmated_mean /= static_cast<double>(pairs.nonmated.size());
  CHECK(mated_mean < nonmated_mean);
}

TEST_CASE("dataset file round-trips through disk") {
  SyntheticConfig cfg;
  cfg.n_subjects = 5;
  cfg.d = 16;
  cfg.seed = 99;
  auto db = generate_synthetic_db(cfg);

  std::string path = "test_dataset_roundtrip.afdb";
  save_dataset(path, db, cfg);
  auto loaded = load_dataset(path);

  CHECK(loaded.cfg.n_subjects == 5);
  CHECK(loaded.cfg.d == 16);
  CHECK(loaded.cfg.seed == 99);
  REQUIRE(loaded.db.size() == db.size());
  for (std::size_t s = 0; s < db.size(); ++s) {
    CHECK(loaded.db[s].subject_id == db[s].subject_id);
    for (std::size_t m = 0; m < db[s].samples.size(); ++m) {
      REQUIRE(loaded.db[s].samples[m].size() == db[s].samples[m].size());
      for (std::size_t k = 0; k < db[s].samples[m].size(); ++k) {
        // f32 storage: values match to single precision, norm restored.
        double norm = 0;
        for (std::size_t i = 0; i < cfg.d; ++i) {
          CHECK(std::abs(loaded.db[s].samples[m][k].vector[i] -
                         db[s].samples[m][k].vector[i]) < 1e-6);
          norm += loaded.db[s].samples[m][k].vector[i] *
                  loaded.db[s].samples[m][k].vector[i];
        }
        CHECK(std::abs(std::sqrt(norm) - 1.0) < 1e-9);
      }
    }
  }
  CHECK(std::filesystem::exists(path + ".manifest.txt"));
  std::filesystem::remove(path);
  std::filesystem::remove(path + ".manifest.txt");
}
