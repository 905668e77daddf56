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

#include "ambfhe/proto/transport.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <condition_variable>
#include <cstring>
#include <deque>
#include <mutex>
#include <stdexcept>

namespace ambfhe::proto {

void send_message(Transport& t, const ProtocolMessage& msg) {
  t.send_frame(serialize(msg));
}

std::optional<ProtocolMessage> recv_message(Transport& t) {
  auto frame = t.recv_frame();
  if (!frame) return std::nullopt;
  return deserialize(*frame);
}

namespace {

struct PipeState {
  std::mutex mutex;
  std::condition_variable cv;
  std::deque<std::vector<std::uint8_t>> a_to_b;
  std::deque<std::vector<std::uint8_t>> b_to_a;
  bool closed = false;
};

class PipeEndpoint : public Transport {
 public:
  PipeEndpoint(std::shared_ptr<PipeState> state, bool is_a)
      : state_(std::move(state)), is_a_(is_a) {}

  void send_frame(std::vector<std::uint8_t> bytes) override {
    std::lock_guard lock(state_->mutex);
    if (state_->closed) throw std::runtime_error("pipe closed");
    (is_a_ ? state_->a_to_b : state_->b_to_a).push_back(std::move(bytes));
    state_->cv.notify_all();
  }

  std::optional<std::vector<std::uint8_t>> recv_frame() override {
    std::unique_lock lock(state_->mutex);
    auto& queue = is_a_ ? state_->b_to_a : state_->a_to_b;
    state_->cv.wait(lock, [&] { return !queue.empty() || state_->closed; });
    if (queue.empty()) return std::nullopt;
    auto frame = std::move(queue.front());
    queue.pop_front();
    return frame;
  }

  void close() override {
    std::lock_guard lock(state_->mutex);
    state_->closed = true;
    state_->cv.notify_all();
  }

 private:
  std::shared_ptr<PipeState> state_;
  bool is_a_;
};

void write_all(int fd, const std::uint8_t* data, std::size_t len) {
  while (len > 0) {
    ssize_t n = ::write(fd, data, len);
    if (n <= 0) throw std::runtime_error("socket write failed");
    data += n;
    len -= static_cast<std::size_t>(n);
  }
}

// false = orderly EOF before any byte; throws mid-message.
bool read_all(int fd, std::uint8_t* data, std::size_t len) {
  std::size_t got = 0;
  while (got < len) {
    ssize_t n = ::read(fd, data + got, len - got);
    if (n == 0) {
      if (got == 0) return false;
      throw std::runtime_error("socket closed mid-message");
    }
    if (n < 0) throw std::runtime_error("socket read failed");
    got += static_cast<std::size_t>(n);
  }
  return true;
}

}  // namespace

std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_duplex_pipe() {
  auto state = std::make_shared<PipeState>();
  return {std::make_unique<PipeEndpoint>(state, true),
          std::make_unique<PipeEndpoint>(state, false)};
}

TcpTransport::TcpTransport(int fd) : fd_(fd) {}

TcpTransport::~TcpTransport() { close(); }

void TcpTransport::close() {
  if (fd_ >= 0) {
    ::shutdown(fd_, SHUT_RDWR);
    ::close(fd_);
    fd_ = -1;
  }
}

std::unique_ptr<TcpTransport> TcpTransport::connect(const std::string& host,
                                                    std::uint16_t port) {
  int fd = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd < 0) throw std::runtime_error("socket() failed");
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd);
    throw std::runtime_error("bad address: " + host);
  }
  if (::connect(fd, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd);
    throw std::runtime_error("connect failed");
  }
  return std::make_unique<TcpTransport>(fd);
}

void TcpTransport::send_frame(std::vector<std::uint8_t> bytes) {
  if (fd_ < 0) throw std::runtime_error("transport closed");
  write_all(fd_, bytes.data(), bytes.size());
}

std::optional<std::vector<std::uint8_t>> TcpTransport::recv_frame() {
  if (fd_ < 0) return std::nullopt;
  std::vector<std::uint8_t> frame(kWireHeaderSize);
  if (!read_all(fd_, frame.data(), kWireHeaderSize)) return std::nullopt;
  std::uint32_t payload_len = peek_payload_len(frame);
  if (payload_len > kMaxPayload) throw WireException(WireError::kBadPayload);
  frame.resize(kWireHeaderSize + payload_len);
  if (payload_len > 0 &&
      !read_all(fd_, frame.data() + kWireHeaderSize, payload_len))
    throw std::runtime_error("socket closed mid-message");
  return frame;
}

TcpListener::TcpListener(const std::string& host, std::uint16_t port) {
  fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (fd_ < 0) throw std::runtime_error("socket() failed");
  int one = 1;
  ::setsockopt(fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(port);
  if (::inet_pton(AF_INET, host.c_str(), &addr.sin_addr) != 1) {
    ::close(fd_);
    throw std::runtime_error("bad address: " + host);
  }
  if (::bind(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) != 0) {
    ::close(fd_);
    throw std::runtime_error("bind failed");
  }
  if (::listen(fd_, 16) != 0) {
    ::close(fd_);
    throw std::runtime_error("listen failed");
  }
  sockaddr_in bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  port_ = ntohs(bound.sin_port);
}

TcpListener::~TcpListener() { close(); }

void TcpListener::close() {
  if (fd_ >= 0) {
    ::close(fd_);
    fd_ = -1;
  }
}

std::unique_ptr<TcpTransport> TcpListener::accept() {
  int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0) throw std::runtime_error("accept failed");
  return std::make_unique<TcpTransport>(fd);
}

}  // namespace ambfhe::proto
