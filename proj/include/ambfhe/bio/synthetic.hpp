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

#ifndef AMBFHE_BIO_SYNTHETIC_HPP_
#define AMBFHE_BIO_SYNTHETIC_HPP_

#include <cstdint>
#include <vector>

#include "ambfhe/bio/template.hpp"

namespace ambfhe::bio {

// Synthetic bimodal population: per subject and modality a unit-norm class
// center drawn uniformly on the sphere, samples = normalize(center + noise).
// The default sigmas were calibrated so each uni-modal EER lands between
// 0.5% and 3% at the default population size.
struct SyntheticConfig {
  std::size_t n_subjects = 533;
  std::size_t d = 512;
  std::size_t samples_min = 2;
  std::size_t samples_max = 5;
  std::vector<double> sigmas = {0.092, 0.098};  // iris, fingerprint
  std::uint64_t seed = 1;

  std::vector<Modality> modalities() const;
  void validate() const;
};

std::vector<SubjectRecord> generate_synthetic_db(const SyntheticConfig& cfg);

// (subject index, sample index) pair pointing into one modality's samples.
struct SampleRef {
  std::size_t subject = 0;
  std::size_t sample = 0;
  bool operator==(const SampleRef&) const = default;
};

struct ComparisonPairs {
  std::vector<std::pair<SampleRef, SampleRef>> mated;     // same subject
  std::vector<std::pair<SampleRef, SampleRef>> nonmated;  // first samples, distinct subjects
};

// Mated: all same-subject cross-sample pairs (sample counts follow the first
// modality; pairs are valid for every modality because counts match).
// Non-mated: first-sample pairs across distinct subjects.
ComparisonPairs mated_and_nonmated_pairs(const std::vector<SubjectRecord>& db);

}  // namespace ambfhe::bio

#endif  // AMBFHE_BIO_SYNTHETIC_HPP_
