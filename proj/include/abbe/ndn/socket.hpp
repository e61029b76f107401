// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Localhost stream-socket faces carrying length-prefixed frames.

#pragma once

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "abbe/ndn/forwarder.hpp"

namespace abbe::ndn {

/// Reads one frame; nullopt on clean end of stream. Throws on a broken frame.
std::optional<std::vector<std::uint8_t>> read_frame(int fd);
void write_frame(int fd, std::span<const std::uint8_t> frame);

/// Accepts connections on 127.0.0.1 and turns each into a forwarder face.
class SocketListener {
 public:
  /// `port` 0 picks a free port.
  SocketListener(Forwarder& fwd, std::uint16_t port = 0);
  ~SocketListener();
  SocketListener(const SocketListener&) = delete;
  SocketListener& operator=(const SocketListener&) = delete;

  std::uint16_t port() const { return port_; }
  std::size_t connections() const;

 private:
  class Connection;

  void accept_loop();

  Forwarder& fwd_;
  int listen_fd_ = -1;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};
  mutable std::mutex mu_;
  std::vector<std::shared_ptr<Connection>> conns_;
  std::thread accept_thread_;
};

/// Consumer side of a socket face.
class SocketClient : public Endpoint {
 public:
  SocketClient(const std::string& host, std::uint16_t port);
  ~SocketClient() override;
  SocketClient(const SocketClient&) = delete;
  SocketClient& operator=(const SocketClient&) = delete;

  void send(Packet packet) override;
  std::optional<Packet> receive(Clock::time_point deadline) override;

 private:
  void read_loop();

  int fd_ = -1;
  std::mutex write_mu_;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Packet> inbox_;
  bool closed_ = false;
  std::thread reader_;
};

}  // namespace abbe::ndn
