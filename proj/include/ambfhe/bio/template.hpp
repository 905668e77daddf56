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

#ifndef AMBFHE_BIO_TEMPLATE_HPP_
#define AMBFHE_BIO_TEMPLATE_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace ambfhe::bio {

// Biometric modality label. 0 = iris, 1 = fingerprint, anything above is a
// free-form index.
struct Modality {
  std::uint32_t id = 0;

  static constexpr Modality iris() { return {0}; }
  static constexpr Modality fingerprint() { return {1}; }
  static constexpr Modality other(std::uint32_t index) { return {2 + index}; }

  std::string name() const;
  bool operator==(const Modality&) const = default;
  auto operator<=>(const Modality&) const = default;
};

// Unit-norm feature vector.
struct Template {
  Modality modality;
  std::vector<double> vector;

  std::size_t size() const { return vector.size(); }
};

// Ordered concatenation of per-modality templates; the slot-packing order
// matches the match policy's modality order.
struct FusedTemplate {
  std::vector<Template> parts;
  std::vector<double> vector;  // length = sum of part lengths
};

// All enrolled samples of one subject, one list per modality.
struct SubjectRecord {
  std::string subject_id;
  std::vector<std::vector<Template>> samples;  // indexed by modality position

  const Template& sample(std::size_t modality_pos, std::size_t idx) const {
    return samples.at(modality_pos).at(idx);
  }
};

// Scale to unit Euclidean norm. Throws std::invalid_argument on a zero or
// non-finite vector.
Template normalize(std::span<const double> v, Modality modality = Modality::iris());

FusedTemplate concatenate(const std::vector<Template>& parts);

// Squared Euclidean distance of two unit-norm vectors via their inner
// product: 2 - 2<u,v>.
double plain_dissimilarity(const Template& a, const Template& b);

}  // namespace ambfhe::bio

#endif  // AMBFHE_BIO_TEMPLATE_HPP_
