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

#include "ambfhe/bio/template.hpp"

#include <cmath>
#include <stdexcept>

namespace ambfhe::bio {

std::string Modality::name() const {
  if (id == 0) return "iris";
  if (id == 1) return "fingerprint";
  return "other-" + std::to_string(id - 2);
}

Template normalize(std::span<const double> v, Modality modality) {
  if (v.empty()) throw std::invalid_argument("empty feature vector");
  double sq = 0;
  for (double x : v) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite feature value");
    sq += x * x;
  }
  if (sq <= 0) throw std::invalid_argument("zero feature vector cannot be normalized");
  double inv = 1.0 / std::sqrt(sq);
  Template t;
  t.modality = modality;
  t.vector.assign(v.begin(), v.end());
  for (double& x : t.vector) x *= inv;
  return t;
}

FusedTemplate concatenate(const std::vector<Template>& parts) {
  if (parts.empty()) throw std::invalid_argument("nothing to concatenate");
  FusedTemplate f;
  f.parts = parts;
  for (const Template& t : parts)
    f.vector.insert(f.vector.end(), t.vector.begin(), t.vector.end());
  return f;
}

double plain_dissimilarity(const Template& a, const Template& b) {
  if (a.size() != b.size()) throw std::invalid_argument("template length mismatch");
  double ip = 0;
  for (std::size_t i = 0; i < a.size(); ++i) ip += a.vector[i] * b.vector[i];
  return 2.0 - 2.0 * ip;
}

}  // namespace ambfhe::bio
