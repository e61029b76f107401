// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Single-node forwarder. All table state (CS, PIT, FIB) lives on one event
// thread; faces hand packets to it through a queue and receive packets back
// through Face::deliver, which is always invoked on that thread.

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <unordered_map>
#include <vector>

#include "abbe/ndn/packet.hpp"

namespace abbe::ndn {

using FaceId = std::uint32_t;
using Clock = std::chrono::steady_clock;

class Face {
 public:
  virtual ~Face() = default;
  /// Called on the forwarder thread. Must not block on the forwarder.
  virtual void deliver(Packet packet) = 0;
};

/// CS capacity from ABBE_NDN_CS_CAPACITY, else 65536 segments.
std::size_t default_cs_capacity();

struct ForwarderOptions {
  std::size_t cs_capacity = default_cs_capacity();
  std::chrono::milliseconds pit_lifetime{4000};
};

struct ForwarderStats {
  std::uint64_t interests_in = 0;
  std::uint64_t upstream_interests = 0;
  std::uint64_t cs_hits = 0;
  std::uint64_t pit_aggregated = 0;
  std::uint64_t data_in = 0;
  std::uint64_t data_delivered = 0;
  std::uint64_t unsolicited_data = 0;
  std::uint64_t nacks_sent = 0;
  std::uint64_t cs_evictions = 0;
};

class Forwarder {
 public:
  explicit Forwarder(ForwarderOptions options = {});
  ~Forwarder();
  Forwarder(const Forwarder&) = delete;
  Forwarder& operator=(const Forwarder&) = delete;

  /// The forwarder keeps only a weak reference; a face that dies is skipped.
  FaceId add_face(std::weak_ptr<Face> face);
  void remove_face(FaceId id);
  void register_prefix(const Name& prefix, FaceId next_face);

  /// Enqueues a packet arriving on `from`. Thread-safe, never blocks on
  /// packet processing.
  void receive(FaceId from, Packet packet);

  /// Runs `fn` on the event thread and waits for its result.
  template <typename F>
  auto run_sync(F&& fn) -> decltype(fn()) {
    using R = decltype(fn());
    std::packaged_task<R()> task(std::forward<F>(fn));
    auto fut = task.get_future();
    post([&task] { task(); });
    return fut.get();
  }

  ForwarderStats stats();
  std::size_t cs_size();
  std::size_t pit_size();
  std::optional<Data> cs_lookup(const Name& name);
  /// Empties the content store.
  void clear_cache();
  std::size_t cs_capacity() const { return options_.cs_capacity; }

 private:
  struct PitEntry {
    std::set<FaceId> faces;
    Clock::time_point expiry;
  };

  void post(std::function<void()> fn);
  void loop();
  void on_interest(FaceId in, Interest interest);
  void on_data(FaceId in, Data data);
  void on_nack(FaceId in, const Nack& nack);
  void send(FaceId to, Packet packet);
  void cs_insert(const Data& data);
  std::optional<FaceId> fib_lookup(const Name& name) const;
  void expire_pit(Clock::time_point now);

  ForwarderOptions options_;

  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<std::function<void()>> queue_;
  bool stopping_ = false;

  // Event-thread state.
  std::unordered_map<FaceId, std::weak_ptr<Face>> faces_;
  FaceId next_face_ = 1;
  std::map<std::vector<std::string>, FaceId> fib_;
  std::unordered_map<Name, PitEntry, NameHash> pit_;
  std::unordered_map<Name, Data, NameHash> cs_;
  std::deque<Name> cs_order_;
  ForwarderStats stats_;
  Clock::time_point next_sweep_;

  std::thread thread_;
};

/// Consumer-side handle: something that can send packets toward a forwarder
/// and wait for replies.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  virtual void send(Packet packet) = 0;
  /// Next inbound packet, or nullopt once `deadline` passes.
  virtual std::optional<Packet> receive(Clock::time_point deadline) = 0;
};

/// In-process face with an inbox.
class AppFace : public Face, public Endpoint {
 public:
  static std::shared_ptr<AppFace> attach(Forwarder& fwd);
  ~AppFace() override;

  FaceId id() const { return id_; }
  void deliver(Packet packet) override;
  void send(Packet packet) override;
  std::optional<Packet> receive(Clock::time_point deadline) override;

 private:
  explicit AppFace(Forwarder& fwd) : fwd_(fwd) {}

  Forwarder& fwd_;
  FaceId id_ = 0;
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Packet> inbox_;
};

}  // namespace abbe::ndn
