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

#ifndef AMBFHE_BIO_DATASET_IO_HPP_
#define AMBFHE_BIO_DATASET_IO_HPP_

#include <string>
#include <vector>

#include "ambfhe/bio/synthetic.hpp"

namespace ambfhe::bio {

// Binary dataset format: magic "AFDB", version u16 LE, generator config,
// then per-subject records with templates stored as little-endian f32.
// A human-readable .manifest.txt (subject count, d, sigmas, seed) is written
// next to the dataset.
void save_dataset(const std::string& path, const std::vector<SubjectRecord>& db,
                  const SyntheticConfig& cfg);

struct LoadedDataset {
  std::vector<SubjectRecord> db;
  SyntheticConfig cfg;
};

LoadedDataset load_dataset(const std::string& path);

}  // namespace ambfhe::bio

#endif  // AMBFHE_BIO_DATASET_IO_HPP_
