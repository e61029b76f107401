// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/ndn/socket.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>

#include "abbe/errors.hpp"

namespace abbe::ndn {

namespace {

constexpr std::uint32_t kMaxFrame = 16u << 20;

bool read_exact(int fd, std::uint8_t* buf, std::size_t n, bool allow_eof) {
  std::size_t got = 0;
  while (got < n) {
    ssize_t r = ::recv(fd, buf + got, n - got, 0);
    if (r == 0) {
      if (allow_eof && got == 0) return false;
      throw Error(ErrorCode::kIo, "connection closed mid-frame");
    }
    if (r < 0) {
      if (errno == EINTR) continue;
      if (allow_eof && got == 0 && (errno == ECONNRESET || errno == EBADF || errno == EINVAL)) return false;
      throw Error(ErrorCode::kIo, std::string("recv: ") + std::strerror(errno));
    }
    got += static_cast<std::size_t>(r);
  }
  return true;
}

void set_nodelay(int fd) {
  int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof(one));
}

}  // namespace

std::optional<std::vector<std::uint8_t>> read_frame(int fd) {
  std::vector<std::uint8_t> frame(4);
  if (!read_exact(fd, frame.data(), 4, true)) return std::nullopt;
  std::uint32_t len = (std::uint32_t{frame[0]} << 24) | (std::uint32_t{frame[1]} << 16) |
                      (std::uint32_t{frame[2]} << 8) | frame[3];
  if (len < 4 || len > kMaxFrame) throw Error(ErrorCode::kDecode, "bad frame length " + std::to_string(len));
  frame.resize(len);
  read_exact(fd, frame.data() + 4, len - 4, false);
  return frame;
}

void write_frame(int fd, std::span<const std::uint8_t> frame) {
  std::size_t sent = 0;
  while (sent < frame.size()) {
    ssize_t w = ::send(fd, frame.data() + sent, frame.size() - sent, MSG_NOSIGNAL);
    if (w < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::kIo, std::string("send: ") + std::strerror(errno));
    }
    sent += static_cast<std::size_t>(w);
  }
}

class SocketListener::Connection : public Face {
 public:
  Connection(Forwarder& fwd, int fd) : fwd_(fwd), fd_(fd) {}
  ~Connection() override {
    if (reader_.joinable()) reader_.join();
    ::close(fd_);
  }

  void start(std::shared_ptr<Connection> self) {
    id_ = fwd_.add_face(self);
    reader_ = std::thread([this] { read_loop(); });
  }

  void shutdown() { ::shutdown(fd_, SHUT_RDWR); }
  bool alive() const { return alive_; }

  void deliver(Packet packet) override {
    auto frame = encode(packet);
    std::lock_guard lock(write_mu_);
    try {
      write_frame(fd_, frame);
    } catch (const Error&) {
      alive_ = false;
    }
  }

 private:
  void read_loop() {
    try {
      while (auto frame = read_frame(fd_)) fwd_.receive(id_, decode(*frame));
    } catch (const Error&) {
    }
    alive_ = false;
    fwd_.remove_face(id_);
  }

  Forwarder& fwd_;
  int fd_;
  FaceId id_ = 0;
  std::atomic<bool> alive_{true};
  std::mutex write_mu_;
  std::thread reader_;
};

SocketListener::SocketListener(Forwarder& fwd, std::uint16_t port) : fwd_(fwd) {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw Error(ErrorCode::kIo, std::string("socket: ") + std::strerror(errno));
  int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
  addr.sin_port = htons(port);
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) < 0 || ::listen(listen_fd_, 64) < 0) {
    int err = errno;
    ::close(listen_fd_);
    throw Error(ErrorCode::kIo, std::string("bind/listen: ") + std::strerror(err));
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  port_ = ntohs(addr.sin_port);
  accept_thread_ = std::thread([this] { accept_loop(); });
}

SocketListener::~SocketListener() {
  stopping_ = true;
  ::shutdown(listen_fd_, SHUT_RDWR);
  accept_thread_.join();
  ::close(listen_fd_);
  std::vector<std::shared_ptr<Connection>> conns;
  {
    std::lock_guard lock(mu_);
    conns.swap(conns_);
  }
  for (auto& c : conns) c->shutdown();
}

void SocketListener::accept_loop() {
  while (!stopping_) {
    int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (errno == EINTR) continue;
      return;
    }
    set_nodelay(fd);
    auto conn = std::make_shared<Connection>(fwd_, fd);
    conn->start(conn);
    std::lock_guard lock(mu_);
    conns_.erase(std::remove_if(conns_.begin(), conns_.end(), [](const auto& c) { return !c->alive(); }), conns_.end());
    conns_.push_back(std::move(conn));
  }
}

std::size_t SocketListener::connections() const {
  std::lock_guard lock(mu_);
  std::size_t n = 0;
  for (const auto& c : conns_) n += c->alive() ? 1 : 0;
  return n;
}

SocketClient::SocketClient(const std::string& host, std::uint16_t port) {
  addrinfo hints{};
  hints.ai_family = AF_INET;
  hints.ai_socktype = SOCK_STREAM;
  addrinfo* res = nullptr;
  if (::getaddrinfo(host.c_str(), std::to_string(port).c_str(), &hints, &res) != 0 || res == nullptr)
    throw Error(ErrorCode::kIo, "cannot resolve " + host);
  fd_ = ::socket(res->ai_family, res->ai_socktype, res->ai_protocol);
  int rc = fd_ < 0 ? -1 : ::connect(fd_, res->ai_addr, res->ai_addrlen);
  int err = errno;
  ::freeaddrinfo(res);
  if (rc < 0) {
    if (fd_ >= 0) ::close(fd_);
    throw Error(ErrorCode::kIo, "connect " + host + ":" + std::to_string(port) + ": " + std::strerror(err));
  }
  set_nodelay(fd_);
  reader_ = std::thread([this] { read_loop(); });
}

SocketClient::~SocketClient() {
  ::shutdown(fd_, SHUT_RDWR);
  reader_.join();
  ::close(fd_);
}

void SocketClient::read_loop() {
  try {
    while (auto frame = read_frame(fd_)) {
      Packet p = decode(*frame);
      {
        std::lock_guard lock(mu_);
        inbox_.push_back(std::move(p));
      }
      cv_.notify_one();
    }
  } catch (const Error&) {
  }
  std::lock_guard lock(mu_);
  closed_ = true;
  cv_.notify_all();
}

void SocketClient::send(Packet packet) {
  auto frame = encode(packet);
  std::lock_guard lock(write_mu_);
  write_frame(fd_, frame);
}

std::optional<Packet> SocketClient::receive(Clock::time_point deadline) {
  std::unique_lock lock(mu_);
  cv_.wait_until(lock, deadline, [this] { return !inbox_.empty() || closed_; });
  if (inbox_.empty()) {
    if (closed_) throw Error(ErrorCode::kIo, "connection closed");
    return std::nullopt;
  }
  Packet p = std::move(inbox_.front());
  inbox_.pop_front();
  return p;
}

}  // namespace abbe::ndn
