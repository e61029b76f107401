// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/ndn/endpoints.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "abbe/errors.hpp"

namespace abbe::ndn {

namespace {

std::uint32_t fresh_nonce() {
  thread_local std::mt19937 gen{std::random_device{}()};
  return static_cast<std::uint32_t>(gen());
}

}  // namespace

std::shared_ptr<Producer> Producer::attach(Forwarder& fwd, std::string producer_id,
                                           std::shared_ptr<const Signer> signer) {
  if (!signer) throw Error(ErrorCode::kInvalidArgument, "producer needs a signer");
  std::shared_ptr<Producer> p(new Producer(fwd, std::move(producer_id), std::move(signer)));
  p->id_ = fwd.add_face(p);
  return p;
}

Producer::~Producer() { fwd_.remove_face(id_); }

void Producer::register_prefix(const Name& prefix) {
  {
    std::lock_guard lock(mu_);
    prefixes_.push_back(prefix.without_segment());
  }
  fwd_.register_prefix(prefix, id_);
}

std::uint64_t Producer::publish(const Name& name, std::vector<std::uint8_t> payload, std::size_t chunk_size) {
  if (chunk_size < 1 || chunk_size > kMaxChunkSize)
    throw Error(ErrorCode::kInvalidArgument, "chunk size must be in [1, 65536]");
  Name base = name.without_segment();
  {
    std::lock_guard lock(mu_);
    bool routed = std::any_of(prefixes_.begin(), prefixes_.end(), [&](const Name& p) { return base.has_prefix(p); });
    if (!routed) throw Error(ErrorCode::kPrefixNotRegistered, base.to_string());
  }
  auto pub = std::make_shared<Publication>();
  pub->payload = std::move(payload);
  pub->chunk_size = chunk_size;
  std::uint64_t count = pub->payload.empty() ? 1 : (pub->payload.size() + chunk_size - 1) / chunk_size;
  pub->signatures.reserve(count);
  for (std::uint64_t seg = 0; seg < count; ++seg) {
    Data d = build(base, *pub, seg);
    sign_data(d, *signer_);
    pub->signatures.push_back(std::move(d.signature));
  }
  std::lock_guard lock(mu_);
  objects_[base] = std::move(pub);
  return count;
}

Data Producer::build(const Name& base, const Publication& pub, std::uint64_t seg) const {
  std::uint64_t count = pub.payload.empty() ? 1 : (pub.payload.size() + pub.chunk_size - 1) / pub.chunk_size;
  Data d;
  d.name = base.with_segment(seg);
  std::size_t begin = std::min(pub.payload.size(), static_cast<std::size_t>(seg) * pub.chunk_size);
  std::size_t end = std::min(pub.payload.size(), begin + pub.chunk_size);
  d.content.assign(pub.payload.begin() + static_cast<std::ptrdiff_t>(begin),
                   pub.payload.begin() + static_cast<std::ptrdiff_t>(end));
  d.final_segment = static_cast<std::uint32_t>(count - 1);
  d.producer_id = producer_id_;
  if (seg < pub.signatures.size()) d.signature = pub.signatures[seg];
  return d;
}

std::optional<Data> Producer::segment(const Name& name, std::uint64_t seg) const {
  std::shared_ptr<const Publication> pub;
  {
    std::lock_guard lock(mu_);
    auto it = objects_.find(name.without_segment());
    if (it == objects_.end()) return std::nullopt;
    pub = it->second;
  }
  if (seg >= pub->signatures.size()) return std::nullopt;
  return build(name.without_segment(), *pub, seg);
}

void Producer::deliver(Packet packet) {
  auto* interest = std::get_if<Interest>(&packet);
  if (interest == nullptr) return;
  {
    std::lock_guard lock(mu_);
    ++interests_;
    ++requests_[interest->name];
  }
  if (!interest->name.segment()) return;
  if (auto d = segment(interest->name, *interest->name.segment())) fwd_.receive(id_, std::move(*d));
}

std::uint64_t Producer::interests_received() const {
  std::lock_guard lock(mu_);
  return interests_;
}

std::uint64_t Producer::max_requests_per_name() const {
  std::lock_guard lock(mu_);
  std::uint64_t m = 0;
  for (const auto& [name, n] : requests_) m = std::max(m, n);
  return m;
}

void Producer::reset_counters() {
  std::lock_guard lock(mu_);
  interests_ = 0;
  requests_.clear();
}

namespace {

struct Outstanding {
  Clock::time_point deadline;
  int retries = 0;
};

class Fetcher {
 public:
  Fetcher(Endpoint& ep, const Name& name, const FetchOptions& opt) : ep_(ep), base_(name.without_segment()), opt_(opt) {
    if (!opt_.verifier) throw Error(ErrorCode::kInvalidArgument, "fetch needs a verifier");
    if (opt_.window == 0) throw Error(ErrorCode::kInvalidArgument, "fetch window must be positive");
  }

  void run(const ChunkSink& sink) {
    sink_ = &sink;
    express(0, 0);
    while (!done()) {
      auto deadline = earliest_deadline();
      auto p = ep_.receive(deadline);
      if (!p) {
        retry_expired();
        continue;
      }
      if (auto* nack = std::get_if<Nack>(&*p)) {
        if (nack->name.without_segment() == base_) throw Error(ErrorCode::kNoRoute, nack->name.to_string());
        continue;
      }
      if (auto* d = std::get_if<Data>(&*p)) accept(std::move(*d));
    }
  }

 private:
  bool done() const { return final_ && delivered_ == *final_ + 1; }

  void express(std::uint64_t seg, int retries) {
    outstanding_[seg] = Outstanding{Clock::now() + opt_.timeout, retries};
    ep_.send(Interest{base_.with_segment(seg), fresh_nonce()});
  }

  Clock::time_point earliest_deadline() const {
    auto t = Clock::time_point::max();
    for (const auto& [seg, o] : outstanding_) t = std::min(t, o.deadline);
    return t;
  }

  void retry_expired() {
    auto now = Clock::now();
    std::vector<std::pair<std::uint64_t, int>> expired;
    for (const auto& [seg, o] : outstanding_)
      if (o.deadline <= now) expired.emplace_back(seg, o.retries);
    for (auto [seg, retries] : expired) {
      if (retries >= opt_.max_retries)
        throw Error(ErrorCode::kTimeout, base_.with_segment(seg).to_string());
      express(seg, retries + 1);
    }
  }

  void accept(Data d) {
    if (d.name.without_segment() != base_ || !d.name.segment()) return;
    std::uint64_t seg = *d.name.segment();
    auto it = outstanding_.find(seg);
    if (it == outstanding_.end()) return;
    if (!verify_data(d, *opt_.verifier)) throw Error(ErrorCode::kSignatureInvalid, d.name.to_string());
    if (!final_) {
      final_ = d.final_segment;
    } else if (d.final_segment != *final_) {
      throw Error(ErrorCode::kDecode, "inconsistent final segment in " + d.name.to_string());
    }
    if (seg > *final_) return;
    outstanding_.erase(it);
    pending_.emplace(seg, std::move(d.content));
    // Hand over the in-order prefix; at most one window of segments is held.
    for (auto p = pending_.begin(); p != pending_.end() && p->first == delivered_; p = pending_.erase(p)) {
      (*sink_)(p->second);
      ++delivered_;
    }
    while (next_ - delivered_ < opt_.window && next_ <= *final_) express(next_++, 0);
  }

  Endpoint& ep_;
  Name base_;
  const FetchOptions& opt_;
  std::map<std::uint64_t, Outstanding> outstanding_;
  std::optional<std::uint64_t> final_;
  std::map<std::uint64_t, std::vector<std::uint8_t>> pending_;
  std::uint64_t delivered_ = 0;
  const ChunkSink* sink_ = nullptr;
  std::uint64_t next_ = 1;
};

}  // namespace

void fetch_to(Endpoint& endpoint, const Name& name, const FetchOptions& options, const ChunkSink& sink) {
  Fetcher(endpoint, name, options).run(sink);
}

std::vector<std::uint8_t> fetch(Endpoint& endpoint, const Name& name, const FetchOptions& options) {
  std::vector<std::uint8_t> out;
  fetch_to(endpoint, name, options, [&](std::span<const std::uint8_t> c) { out.insert(out.end(), c.begin(), c.end()); });
  return out;
}

std::vector<std::uint8_t> fetch(Forwarder& fwd, const Name& name, const FetchOptions& options) {
  auto face = AppFace::attach(fwd);
  return fetch(*face, name, options);
}

}  // namespace abbe::ndn
