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

#ifndef AMBFHE_PROTO_TRANSPORT_HPP_
#define AMBFHE_PROTO_TRANSPORT_HPP_

#include <memory>
#include <optional>

#include "ambfhe/proto/wire.hpp"

namespace ambfhe::proto {

// Reliable, message-oriented byte channel. recv_frame blocks; nullopt means
// the peer closed.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void send_frame(std::vector<std::uint8_t> bytes) = 0;
  virtual std::optional<std::vector<std::uint8_t>> recv_frame() = 0;
  virtual void close() = 0;
};

void send_message(Transport& t, const ProtocolMessage& msg);
// nullopt on orderly close; throws WireException on malformed frames.
std::optional<ProtocolMessage> recv_message(Transport& t);

// In-process duplex pipe: a pair of endpoints exchanging serialized frames
// by value. The default test transport.
std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> make_duplex_pipe();

// Blocking TCP transport over a connected socket.
class TcpTransport : public Transport {
 public:
  explicit TcpTransport(int fd);
  ~TcpTransport() override;
  TcpTransport(const TcpTransport&) = delete;
  TcpTransport& operator=(const TcpTransport&) = delete;

  static std::unique_ptr<TcpTransport> connect(const std::string& host,
                                               std::uint16_t port);

  void send_frame(std::vector<std::uint8_t> bytes) override;
  std::optional<std::vector<std::uint8_t>> recv_frame() override;
  void close() override;

 private:
  int fd_;
};

class TcpListener {
 public:
  TcpListener(const std::string& host, std::uint16_t port);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;

  std::uint16_t port() const { return port_; }
  std::unique_ptr<TcpTransport> accept();
  void close();

 private:
  int fd_;
  std::uint16_t port_;
};

}  // namespace ambfhe::proto

#endif  // AMBFHE_PROTO_TRANSPORT_HPP_
