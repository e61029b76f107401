// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Chunked publish/fetch on top of the forwarder.

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <span>
#include <unordered_map>
#include <vector>

#include "abbe/ndn/forwarder.hpp"
#include "abbe/ndn/signer.hpp"

namespace abbe::ndn {

constexpr std::size_t kDefaultChunkSize = 4096;
constexpr std::size_t kMaxChunkSize = 65536;
constexpr std::size_t kFetchWindow = 64;

class Producer : public Face {
 public:
  /// Attaches a producer face to `fwd`. The forwarder must outlive it.
  static std::shared_ptr<Producer> attach(Forwarder& fwd, std::string producer_id,
                                          std::shared_ptr<const Signer> signer);
  ~Producer() override;

  void register_prefix(const Name& prefix);

  /// Splits `payload` into signed segments of at most `chunk_size` bytes and
  /// starts answering interests for them. Returns the segment count.
  std::uint64_t publish(const Name& name, std::vector<std::uint8_t> payload,
                        std::size_t chunk_size = kDefaultChunkSize);

  /// Rebuilds segment `seg` of a published object, if present.
  std::optional<Data> segment(const Name& name, std::uint64_t seg) const;

  void deliver(Packet packet) override;

  FaceId face_id() const { return id_; }
  const std::string& producer_id() const { return producer_id_; }
  std::shared_ptr<const Verifier> verifier() const { return signer_->verifier(); }
  std::uint64_t interests_received() const;
  /// Largest number of times any single name was requested.
  std::uint64_t max_requests_per_name() const;
  void reset_counters();

 private:
  struct Publication {
    std::vector<std::uint8_t> payload;
    std::size_t chunk_size = 0;
    std::vector<std::vector<std::uint8_t>> signatures;
  };

  Producer(Forwarder& fwd, std::string producer_id, std::shared_ptr<const Signer> signer)
      : fwd_(fwd), producer_id_(std::move(producer_id)), signer_(std::move(signer)) {}
  Data build(const Name& name, const Publication& pub, std::uint64_t seg) const;

  Forwarder& fwd_;
  FaceId id_ = 0;
  std::string producer_id_;
  std::shared_ptr<const Signer> signer_;

  mutable std::mutex mu_;
  std::vector<Name> prefixes_;
  std::unordered_map<Name, std::shared_ptr<const Publication>, NameHash> objects_;
  std::unordered_map<Name, std::uint64_t, NameHash> requests_;
  std::uint64_t interests_ = 0;
};

struct FetchOptions {
  std::shared_ptr<const Verifier> verifier;
  std::size_t window = kFetchWindow;
  std::chrono::milliseconds timeout{2000};
  int max_retries = 3;
};

using ChunkSink = std::function<void(std::span<const std::uint8_t>)>;

/// Retrieves every segment of `name`, verifying each signature, and hands
/// segment contents to `sink` in order. Throws Timeout, SignatureInvalid or
/// NoRoute.
void fetch_to(Endpoint& endpoint, const Name& name, const FetchOptions& options, const ChunkSink& sink);

/// Retrieves every segment of `name` through `endpoint`, verifying each
/// signature. Throws Timeout, SignatureInvalid or NoRoute.
std::vector<std::uint8_t> fetch(Endpoint& endpoint, const Name& name, const FetchOptions& options);

/// Convenience: attaches a fresh AppFace to `fwd` for the duration of the fetch.
std::vector<std::uint8_t> fetch(Forwarder& fwd, const Name& name, const FetchOptions& options);

}  // namespace abbe::ndn
