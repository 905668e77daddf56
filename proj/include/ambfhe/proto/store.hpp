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

#ifndef AMBFHE_PROTO_STORE_HPP_
#define AMBFHE_PROTO_STORE_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

namespace ambfhe::proto {

std::uint32_t crc32(std::span<const std::uint8_t> data);

// File-backed reference template store. Append-only log of
//   id_len u16 | id | blob_len u64 | blob | crc32 u32
// (crc over id_len..blob). Re-enrollment appends a fresh record; on load the
// last valid record per id wins and a torn tail record is discarded, so a
// crash between append and flush never corrupts earlier state. Blobs are
// opaque ciphertext bytes and are never decrypted at rest.
class ReferenceStore {
 public:
  explicit ReferenceStore(std::string path);

  bool contains(const std::string& subject_id) const;
  std::optional<std::vector<std::uint8_t>> get(const std::string& subject_id) const;
  void put(const std::string& subject_id, std::span<const std::uint8_t> blob);
  std::size_t size() const;

 private:
  void load();

  std::string path_;
  mutable std::shared_mutex mutex_;
  std::map<std::string, std::vector<std::uint8_t>> records_;
};

}  // namespace ambfhe::proto

#endif  // AMBFHE_PROTO_STORE_HPP_
