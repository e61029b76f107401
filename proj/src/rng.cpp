// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/rng.hpp"

#include <openssl/rand.h>

#include <cstring>

#include "abbe/errors.hpp"
#include "abbe/hash.hpp"

namespace abbe {

Rng::Rng(std::span<const std::uint8_t> seed) {
  key_ = sha256({as_bytes("abbe-rng-v1"), seed});
}

Rng Rng::from_os() {
  std::array<std::uint8_t, 32> seed{};
  if (RAND_bytes(seed.data(), static_cast<int>(seed.size())) != 1)
    throw Error(ErrorCode::kIo, "OS entropy unavailable");
  return Rng(seed);
}

Rng Rng::from_hex_seed(const std::string& hex) {
  auto bytes = from_hex(hex);
  return Rng(bytes);
}

Rng Rng::from_u64(std::uint64_t seed) {
  std::array<std::uint8_t, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<std::uint8_t>(seed >> (56 - 8 * i));
  return Rng(b);
}

void Rng::refill() {
  std::uint8_t buf[40];
  std::memcpy(buf, key_.data(), 32);
  for (int i = 0; i < 8; ++i) buf[32 + i] = static_cast<std::uint8_t>(counter_ >> (56 - 8 * i));
  ++counter_;
  block_ = sha256(std::span<const std::uint8_t>(buf, sizeof(buf)));
  used_ = 0;
}

void Rng::fill(std::span<std::uint8_t> out) {
  for (auto& b : out) {
    if (used_ == block_.size()) refill();
    b = block_[used_++];
  }
}

std::vector<std::uint8_t> Rng::bytes(std::size_t n) {
  std::vector<std::uint8_t> out(n);
  fill(out);
  return out;
}

std::uint64_t Rng::next_u64() {
  std::array<std::uint8_t, 8> b{};
  fill(b);
  std::uint64_t v = 0;
  for (auto x : b) v = (v << 8) | x;
  return v;
}

std::uint64_t Rng::uniform(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::kInvalidArgument, "uniform bound must be positive");
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
  for (;;) {
    std::uint64_t v = next_u64();
    if (v < limit) return v % bound;
  }
}

Rng Rng::fork() {
  auto seed = bytes(32);
  return Rng(seed);
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
  static const char kDigits[] = "0123456789abcdef";
  std::string out;
  out.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    out.push_back(kDigits[b >> 4]);
    out.push_back(kDigits[b & 0xf]);
  }
  return out;
}

std::vector<std::uint8_t> from_hex(const std::string& hex) {
  std::string body = hex;
  if (body.size() >= 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) body = body.substr(2);
  if (body.size() % 2 != 0) throw Error(ErrorCode::kDecode, "odd-length hex string");
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  std::vector<std::uint8_t> out(body.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = nibble(body[2 * i]);
    int lo = nibble(body[2 * i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::kDecode, "invalid hex digit");
    out[i] = static_cast<std::uint8_t>((hi << 4) | lo);
  }
  return out;
}

}  // namespace abbe
