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

#include "ambfhe/bio/synthetic.hpp"

#include <cstdio>
#include <stdexcept>

#include "ambfhe/ckks/rng.hpp"

namespace ambfhe::bio {

std::vector<Modality> SyntheticConfig::modalities() const {
  std::vector<Modality> mods;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    if (i == 0) mods.push_back(Modality::iris());
    else if (i == 1) mods.push_back(Modality::fingerprint());
    else mods.push_back(Modality::other(static_cast<std::uint32_t>(i - 2)));
  }
  return mods;
}

void SyntheticConfig::validate() const {
  if (n_subjects < 2) throw std::invalid_argument("need at least two subjects");
  if (d == 0) throw std::invalid_argument("template length must be positive");
  if (sigmas.empty()) throw std::invalid_argument("need at least one modality");
  for (double s : sigmas)
    if (!(s > 0)) throw std::invalid_argument("noise sigma must be positive");
  if (samples_min < 1 || samples_max < samples_min)
    throw std::invalid_argument("bad samples range");
}

std::vector<SubjectRecord> generate_synthetic_db(const SyntheticConfig& cfg) {
  cfg.validate();
  ckks::ChaChaRng rng(cfg.seed);
  std::vector<Modality> mods = cfg.modalities();

  std::vector<SubjectRecord> db;
  db.reserve(cfg.n_subjects);
  for (std::size_t s = 0; s < cfg.n_subjects; ++s) {
    SubjectRecord rec;
    char id[16];
    std::snprintf(id, sizeof(id), "S%05zu", s);
    rec.subject_id = id;
    std::size_t n_samples =
        cfg.samples_min +
        static_cast<std::size_t>(rng.uniform_below(cfg.samples_max - cfg.samples_min + 1));
    rec.samples.resize(mods.size());
    for (std::size_t m = 0; m < mods.size(); ++m) {
      std::vector<double> center(cfg.d);
      for (auto& x : center) x = rng.normal(1.0);
      Template c = normalize(center, mods[m]);
      rec.samples[m].reserve(n_samples);
      for (std::size_t k = 0; k < n_samples; ++k) {
        std::vector<double> v = c.vector;
        for (auto& x : v) x += rng.normal(cfg.sigmas[m]);
        rec.samples[m].push_back(normalize(v, mods[m]));
      }
    }
    db.push_back(std::move(rec));
  }
  return db;
}

ComparisonPairs mated_and_nonmated_pairs(const std::vector<SubjectRecord>& db) {
  if (db.size() < 2) throw std::invalid_argument("need at least two subjects");
  ComparisonPairs out;
  for (std::size_t s = 0; s < db.size(); ++s) {
    std::size_t n = db[s].samples.at(0).size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        out.mated.push_back({{s, i}, {s, j}});
  }
  for (std::size_t a = 0; a < db.size(); ++a)
    for (std::size_t b = a + 1; b < db.size(); ++b)
      out.nonmated.push_back({{a, 0}, {b, 0}});
  return out;
}

}  // namespace ambfhe::bio
