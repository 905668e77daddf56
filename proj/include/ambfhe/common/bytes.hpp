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

#ifndef AMBFHE_COMMON_BYTES_HPP_
#define AMBFHE_COMMON_BYTES_HPP_

#include <cstdint>
#include <cstring>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambfhe {

// Little-endian byte buffer writer/reader used by every on-disk and on-wire
// format in this project.
class ByteWriter {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u16(std::uint16_t v) { raw(&v, 2); }
  void u32(std::uint32_t v) { raw(&v, 4); }
  void u64(std::uint64_t v) { raw(&v, 8); }
  void f64(double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    u64(bits);
  }
  void f32(float v) {
    std::uint32_t bits;
    std::memcpy(&bits, &v, 4);
    u32(bits);
  }
  void bytes(std::span<const std::uint8_t> b) {
    buf_.insert(buf_.end(), b.begin(), b.end());
  }
  void str16(const std::string& s) {
    if (s.size() > 0xffff) throw std::length_error("string too long for u16 length");
    u16(static_cast<std::uint16_t>(s.size()));
    buf_.insert(buf_.end(), s.begin(), s.end());
  }
  void blob64(std::span<const std::uint8_t> b) {
    u64(b.size());
    bytes(b);
  }

  const std::vector<std::uint8_t>& data() const { return buf_; }
  std::vector<std::uint8_t> take() { return std::move(buf_); }

 private:
  void raw(const void* p, std::size_t len) {
    const auto* c = static_cast<const std::uint8_t*>(p);
    buf_.insert(buf_.end(), c, c + len);
  }
  std::vector<std::uint8_t> buf_;
};

struct ByteUnderflow : std::runtime_error {
  ByteUnderflow() : std::runtime_error("byte buffer underflow") {}
};

class ByteReader {
 public:
  explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() { return *take(1); }
  std::uint16_t u16() { return load<std::uint16_t>(); }
  std::uint32_t u32() { return load<std::uint32_t>(); }
  std::uint64_t u64() { return load<std::uint64_t>(); }
  double f64() {
    std::uint64_t bits = u64();
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
  }
  float f32() {
    std::uint32_t bits = u32();
    float v;
    std::memcpy(&v, &bits, 4);
    return v;
  }
  std::vector<std::uint8_t> bytes(std::size_t len) {
    const std::uint8_t* p = take(len);
    return {p, p + len};
  }
  std::string str16() {
    std::size_t len = u16();
    const std::uint8_t* p = take(len);
    return {reinterpret_cast<const char*>(p), len};
  }
  std::vector<std::uint8_t> blob64() {
    std::uint64_t len = u64();
    if (len > remaining()) throw ByteUnderflow();
    return bytes(static_cast<std::size_t>(len));
  }

  std::size_t remaining() const { return data_.size() - pos_; }
  bool exhausted() const { return pos_ == data_.size(); }

 private:
  template <typename T>
  T load() {
    const std::uint8_t* p = take(sizeof(T));
    T v;
    std::memcpy(&v, p, sizeof(T));
    return v;
  }
  const std::uint8_t* take(std::size_t len) {
    if (pos_ + len > data_.size()) throw ByteUnderflow();
    const std::uint8_t* p = data_.data() + pos_;
    pos_ += len;
    return p;
  }
  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

}  // namespace ambfhe

#endif  // AMBFHE_COMMON_BYTES_HPP_
