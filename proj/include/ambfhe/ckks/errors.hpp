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

#ifndef AMBFHE_CKKS_ERRORS_HPP_
#define AMBFHE_CKKS_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ambfhe::ckks {

struct CkksError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LevelMismatch : CkksError {
  LevelMismatch() : CkksError("operands are at different levels") {}
};

struct ScaleMismatch : CkksError {
  ScaleMismatch() : CkksError("operands carry different scales") {}
};

struct LevelExhausted : CkksError {
  LevelExhausted() : CkksError("no remaining level for a rescale") {}
};

struct MissingGaloisKey : CkksError {
  explicit MissingGaloisKey(std::size_t step)
      : CkksError("no Galois key for rotation step " + std::to_string(step)) {}
};

struct MissingRelinKey : CkksError {
  MissingRelinKey() : CkksError("relinearization key not present") {}
};

struct MalformedCiphertext : CkksError {
  explicit MalformedCiphertext(const std::string& what) : CkksError(what) {}
};

}  // namespace ambfhe::ckks

#endif  // AMBFHE_CKKS_ERRORS_HPP_
