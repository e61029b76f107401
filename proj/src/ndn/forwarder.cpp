// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/ndn/forwarder.hpp"

#include <cstdlib>
#include <string>

namespace abbe::ndn {

namespace {

constexpr std::size_t kDefaultCsCapacity = 65536;
constexpr auto kSweepInterval = std::chrono::milliseconds(500);

}  // namespace

std::size_t default_cs_capacity() {
  if (const char* env = std::getenv("ABBE_NDN_CS_CAPACITY")) {
    try {
      std::size_t pos = 0;
      unsigned long long v = std::stoull(env, &pos);
      if (pos == std::string(env).size()) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultCsCapacity;
}

Forwarder::Forwarder(ForwarderOptions options) : options_(options) {
  next_sweep_ = Clock::now() + kSweepInterval;
  thread_ = std::thread([this] { loop(); });
}

Forwarder::~Forwarder() {
  {
    std::lock_guard lock(mu_);
    stopping_ = true;
  }
  cv_.notify_all();
  thread_.join();
}

void Forwarder::post(std::function<void()> fn) {
  {
    std::lock_guard lock(mu_);
    queue_.push_back(std::move(fn));
  }
  cv_.notify_one();
}

void Forwarder::loop() {
  std::unique_lock lock(mu_);
  for (;;) {
    cv_.wait_until(lock, next_sweep_, [this] { return stopping_ || !queue_.empty(); });
    if (queue_.empty() && stopping_) return;
    while (!queue_.empty()) {
      auto fn = std::move(queue_.front());
      queue_.pop_front();
      lock.unlock();
      fn();
      lock.lock();
    }
    auto now = Clock::now();
    if (now >= next_sweep_) {
      lock.unlock();
      expire_pit(now);
      lock.lock();
      next_sweep_ = now + kSweepInterval;
    }
  }
}

FaceId Forwarder::add_face(std::weak_ptr<Face> face) {
  return run_sync([this, face = std::move(face)] {
    FaceId id = next_face_++;
    faces_.emplace(id, face);
    return id;
  });
}

void Forwarder::remove_face(FaceId id) {
  post([this, id] {
    faces_.erase(id);
    for (auto it = fib_.begin(); it != fib_.end();) it = it->second == id ? fib_.erase(it) : std::next(it);
    for (auto& [name, entry] : pit_) entry.faces.erase(id);
  });
}

void Forwarder::register_prefix(const Name& prefix, FaceId next_face) {
  run_sync([&] { fib_[prefix.components()] = next_face; });
}

void Forwarder::receive(FaceId from, Packet packet) {
  post([this, from, p = std::move(packet)]() mutable {
    if (auto* i = std::get_if<Interest>(&p)) {
      on_interest(from, std::move(*i));
    } else if (auto* d = std::get_if<Data>(&p)) {
      on_data(from, std::move(*d));
    } else {
      on_nack(from, std::get<Nack>(p));
    }
  });
}

void Forwarder::send(FaceId to, Packet packet) {
  auto it = faces_.find(to);
  if (it == faces_.end()) return;
  if (auto face = it->second.lock()) face->deliver(std::move(packet));
}

std::optional<FaceId> Forwarder::fib_lookup(const Name& name) const {
  std::vector<std::string> key = name.components();
  for (;;) {
    auto it = fib_.find(key);
    if (it != fib_.end()) return it->second;
    if (key.empty()) return std::nullopt;
    key.pop_back();
  }
}

void Forwarder::on_interest(FaceId in, Interest interest) {
  ++stats_.interests_in;
  if (auto hit = cs_.find(interest.name); hit != cs_.end()) {
    ++stats_.cs_hits;
    send(in, hit->second);
    return;
  }
  auto now = Clock::now();
  auto pit = pit_.find(interest.name);
  if (pit != pit_.end() && pit->second.expiry <= now) {
    pit_.erase(pit);
    pit = pit_.end();
  }
  if (pit != pit_.end()) {
    // A repeat from a face already waiting is a retransmission and goes upstream again.
    bool retransmit = !pit->second.faces.insert(in).second;
    pit->second.expiry = now + options_.pit_lifetime;
    if (!retransmit) {
      ++stats_.pit_aggregated;
      return;
    }
  }
  auto next = fib_lookup(interest.name);
  if (!next) {
    ++stats_.nacks_sent;
    if (pit != pit_.end() && pit->second.faces.size() == 1) pit_.erase(pit);
    send(in, Nack{interest.name, NackReason::kNoRoute});
    return;
  }
  if (pit == pit_.end()) pit_.emplace(interest.name, PitEntry{{in}, now + options_.pit_lifetime});
  ++stats_.upstream_interests;
  send(*next, std::move(interest));
}

void Forwarder::on_data(FaceId, Data data) {
  ++stats_.data_in;
  auto pit = pit_.find(data.name);
  if (pit == pit_.end()) {
    ++stats_.unsolicited_data;
    return;
  }
  std::set<FaceId> faces = std::move(pit->second.faces);
  pit_.erase(pit);
  cs_insert(data);
  for (FaceId f : faces) {
    ++stats_.data_delivered;
    send(f, data);
  }
}

void Forwarder::on_nack(FaceId, const Nack& nack) {
  auto pit = pit_.find(nack.name);
  if (pit == pit_.end()) return;
  std::set<FaceId> faces = std::move(pit->second.faces);
  pit_.erase(pit);
  for (FaceId f : faces) send(f, nack);
}

void Forwarder::cs_insert(const Data& data) {
  if (options_.cs_capacity == 0) return;
  auto [it, inserted] = cs_.insert_or_assign(data.name, data);
  if (!inserted) return;
  cs_order_.push_back(data.name);
  while (cs_.size() > options_.cs_capacity) {
    cs_.erase(cs_order_.front());
    cs_order_.pop_front();
    ++stats_.cs_evictions;
  }
}

void Forwarder::expire_pit(Clock::time_point now) {
  for (auto it = pit_.begin(); it != pit_.end();) it = it->second.expiry <= now ? pit_.erase(it) : std::next(it);
}

ForwarderStats Forwarder::stats() {
  return run_sync([this] { return stats_; });
}

std::size_t Forwarder::cs_size() {
  return run_sync([this] { return cs_.size(); });
}

std::size_t Forwarder::pit_size() {
  return run_sync([this] { return pit_.size(); });
}

void Forwarder::clear_cache() {
  run_sync([this] {
    cs_.clear();
    cs_order_.clear();
  });
}

std::optional<Data> Forwarder::cs_lookup(const Name& name) {
  return run_sync([&]() -> std::optional<Data> {
    auto it = cs_.find(name);
    if (it == cs_.end()) return std::nullopt;
    return it->second;
  });
}

std::shared_ptr<AppFace> AppFace::attach(Forwarder& fwd) {
  std::shared_ptr<AppFace> face(new AppFace(fwd));
  face->id_ = fwd.add_face(face);
  return face;
}

AppFace::~AppFace() { fwd_.remove_face(id_); }

void AppFace::deliver(Packet packet) {
  {
    std::lock_guard lock(mu_);
    inbox_.push_back(std::move(packet));
  }
  cv_.notify_one();
}

void AppFace::send(Packet packet) { fwd_.receive(id_, std::move(packet)); }

std::optional<Packet> AppFace::receive(Clock::time_point deadline) {
  std::unique_lock lock(mu_);
  if (!cv_.wait_until(lock, deadline, [this] { return !inbox_.empty(); })) return std::nullopt;
  Packet p = std::move(inbox_.front());
  inbox_.pop_front();
  return p;
}

}  // namespace abbe::ndn
