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

#include <filesystem>
#include <fstream>

#include "ambfhe/proto/store.hpp"
#include "doctest.h"

using namespace ambfhe::proto;

namespace {

struct TempStore {
  std::string path = "test_reference_store.log";
  TempStore() { std::filesystem::remove(path); }
  ~TempStore() { std::filesystem::remove(path); }
};

std::vector<std::uint8_t> blob(std::initializer_list<int> v) {
  std::vector<std::uint8_t> out;
  for (int x : v) out.push_back(static_cast<std::uint8_t>(x));
  return out;
}

}  // namespace

TEST_CASE("put/get/replace and persistence across reopen") {
  TempStore tmp;
  {
    ReferenceStore store(tmp.path);
    CHECK(store.size() == 0);
    CHECK(!store.contains("alice"));
    store.put("alice", blob({1, 2, 3}));
    store.put("bob", blob({4, 5}));
    CHECK(store.size() == 2);
    CHECK(store.get("alice").value() == blob({1, 2, 3}));

    // Re-enrollment replaces; the log keeps history, the map keeps the last.
    store.put("alice", blob({9, 9, 9, 9}));
    CHECK(store.get("alice").value() == blob({9, 9, 9, 9}));
    CHECK(store.size() == 2);
  }
  {
    ReferenceStore reopened(tmp.path);
    CHECK(reopened.size() == 2);
    CHECK(reopened.get("alice").value() == blob({9, 9, 9, 9}));
    CHECK(reopened.get("bob").value() == blob({4, 5}));
    CHECK(!reopened.get("carol").has_value());
  }
}

TEST_CASE("a torn tail record is discarded on reload") {
  TempStore tmp;
  {
    ReferenceStore store(tmp.path);
    store.put("alice", blob({1, 2, 3}));
    store.put("bob", blob({4, 5, 6, 7}));
  }
  auto valid_size = std::filesystem::file_size(tmp.path);

  // Crash injection: a partial append (header and a few blob bytes, no CRC).
  {
    std::ofstream out(tmp.path, std::ios::binary | std::ios::app);
    const char torn[] = {0x05, 0x00, 'c', 'a', 'r', 'o', 'l', 0x40, 0x00};
    out.write(torn, sizeof(torn));
  }
  {
    ReferenceStore store(tmp.path);
    CHECK(store.size() == 2);
    CHECK(store.get("alice").has_value());
    CHECK(!store.contains("carol"));
    // The torn bytes were dropped so appends keep working.
    CHECK(std::filesystem::file_size(tmp.path) == valid_size);
    store.put("carol", blob({8}));
  }
  {
    ReferenceStore store(tmp.path);
    CHECK(store.size() == 3);
    CHECK(store.get("carol").value() == blob({8}));
  }
}

TEST_CASE("a corrupted record checksum truncates from the corruption point") {
  TempStore tmp;
  {
    ReferenceStore store(tmp.path);
    store.put("alice", blob({1, 2, 3}));
    store.put("bob", blob({4, 5, 6}));
  }
  // Flip a byte inside the second record's blob.
  auto size = std::filesystem::file_size(tmp.path);
  {
    std::fstream f(tmp.path, std::ios::binary | std::ios::in | std::ios::out);
    f.seekp(static_cast<std::streamoff>(size) - 6);
    char junk = 0x5a;
    f.write(&junk, 1);
  }
  ReferenceStore store(tmp.path);
  CHECK(store.contains("alice"));
  CHECK(!store.contains("bob"));
}

TEST_CASE("crc32 known vector") {
  // "123456789" -> 0xcbf43926 (standard check value).
  std::vector<std::uint8_t> data = {'1', '2', '3', '4', '5', '6', '7', '8', '9'};
  CHECK(crc32(data) == 0xcbf43926u);
}
