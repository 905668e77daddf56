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

#include "ambfhe/proto/store.hpp"

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <stdexcept>

#include "ambfhe/common/bytes.hpp"

namespace ambfhe::proto {

std::uint32_t crc32(std::span<const std::uint8_t> data) {
  static const std::array<std::uint32_t, 256> table = [] {
    std::array<std::uint32_t, 256> t{};
    for (std::uint32_t i = 0; i < 256; ++i) {
      std::uint32_t c = i;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
      t[i] = c;
    }
    return t;
  }();
  std::uint32_t c = 0xffffffffu;
  for (std::uint8_t b : data) c = table[(c ^ b) & 0xffu] ^ (c >> 8);
  return c ^ 0xffffffffu;
}

ReferenceStore::ReferenceStore(std::string path) : path_(std::move(path)) {
  load();
}

void ReferenceStore::load() {
  std::unique_lock lock(mutex_);
  records_.clear();
  std::ifstream in(path_, std::ios::binary);
  if (!in) return;  // fresh store
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  in.close();

  std::size_t valid_end = 0;
  std::size_t pos = 0;
  while (pos + 2 <= bytes.size()) {
    std::uint16_t id_len;
    std::memcpy(&id_len, bytes.data() + pos, 2);
    std::size_t need = 2 + id_len + 8;
    if (pos + need > bytes.size()) break;
    std::uint64_t blob_len;
    std::memcpy(&blob_len, bytes.data() + pos + 2 + id_len, 8);
    std::size_t record_len = need + blob_len + 4;
    if (blob_len > bytes.size() || pos + record_len > bytes.size()) break;
    std::uint32_t stored_crc;
    std::memcpy(&stored_crc, bytes.data() + pos + need + blob_len, 4);
    std::span<const std::uint8_t> body(bytes.data() + pos, need + blob_len);
    if (crc32(body) != stored_crc) break;  // torn or corrupt tail

    std::string id(reinterpret_cast<const char*>(bytes.data() + pos + 2), id_len);
    const std::uint8_t* blob = bytes.data() + pos + need;
    records_[id] = std::vector<std::uint8_t>(blob, blob + blob_len);
    pos += record_len;
    valid_end = pos;
  }
  if (valid_end < bytes.size()) {
    // Drop the torn tail so later appends stay parseable.
    std::filesystem::resize_file(path_, valid_end);
  }
}

bool ReferenceStore::contains(const std::string& subject_id) const {
  std::shared_lock lock(mutex_);
  return records_.find(subject_id) != records_.end();
}

std::optional<std::vector<std::uint8_t>> ReferenceStore::get(
    const std::string& subject_id) const {
  std::shared_lock lock(mutex_);
  auto it = records_.find(subject_id);
  if (it == records_.end()) return std::nullopt;
  return it->second;
}

std::size_t ReferenceStore::size() const {
  std::shared_lock lock(mutex_);
  return records_.size();
}

void ReferenceStore::put(const std::string& subject_id,
                         std::span<const std::uint8_t> blob) {
  if (subject_id.empty() || subject_id.size() > 0xffff)
    throw std::invalid_argument("bad subject id");
  ByteWriter w;
  w.u16(static_cast<std::uint16_t>(subject_id.size()));
  w.bytes(std::span<const std::uint8_t>(
      reinterpret_cast<const std::uint8_t*>(subject_id.data()), subject_id.size()));
  w.u64(blob.size());
  w.bytes(blob);
  std::uint32_t crc = crc32(w.data());
  w.u32(crc);

  std::unique_lock lock(mutex_);
  std::ofstream out(path_, std::ios::binary | std::ios::app);
  if (!out) throw std::runtime_error("cannot open store for append: " + path_);
  out.write(reinterpret_cast<const char*>(w.data().data()),
            static_cast<std::streamsize>(w.data().size()));
  out.flush();
  if (!out) throw std::runtime_error("store append failed: " + path_);
  records_[subject_id] = std::vector<std::uint8_t>(blob.begin(), blob.end());
}

}  // namespace ambfhe::proto
