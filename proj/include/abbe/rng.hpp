// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace abbe {

/// Deterministic byte generator: SHA-256(key || counter) blocks.
///
/// Seeded explicitly for reproducible runs, or from the OS entropy pool.
/// Not thread-safe; give each task its own instance (see fork()).
class Rng {
 public:
  explicit Rng(std::span<const std::uint8_t> seed);
  static Rng from_os();
  static Rng from_hex_seed(const std::string& hex);
  static Rng from_u64(std::uint64_t seed);

  void fill(std::span<std::uint8_t> out);
  std::vector<std::uint8_t> bytes(std::size_t n);
  std::uint64_t next_u64();
  /// Uniform integer in [0, bound), bound > 0.
  std::uint64_t uniform(std::uint64_t bound);
  /// Independent child stream derived from this one.
  Rng fork();

 private:
  void refill();

  std::array<std::uint8_t, 32> key_{};
  std::uint64_t counter_ = 0;
  std::array<std::uint8_t, 32> block_{};
  std::size_t used_ = 32;
};

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(const std::string& hex);

}  // namespace abbe
