// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Named-data packet model and its socket wire format.
//
// Frame layout (all integers big-endian):
//   u32 frame length (including these four bytes) | u8 type | u16 name length
//   | name (canonical text form, UTF-8) | body
// Bodies:
//   Interest (type 1): u32 nonce
//   Data     (type 2): u32 final_segment | u16 signature length | signature | content
//   Nack     (type 3): u8 reason

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace abbe::ndn {

class Name {
 public:
  Name() = default;
  /// Parses "/c1/c2[/seg=<i>]". Throws InvalidArgument on empty names or
  /// empty components.
  static Name parse(std::string_view text);
  Name(std::vector<std::string> components, std::optional<std::uint64_t> segment = std::nullopt);

  const std::vector<std::string>& components() const { return components_; }
  std::optional<std::uint64_t> segment() const { return segment_; }
  Name with_segment(std::uint64_t seg) const { return Name(components_, seg); }
  Name without_segment() const { return Name(components_); }
  /// Component-wise prefix test; the segment counts as a final component.
  bool has_prefix(const Name& prefix) const;
  std::size_t size() const { return components_.size() + (segment_ ? 1 : 0); }
  std::string to_string() const;

  auto operator<=>(const Name&) const = default;
  bool operator==(const Name&) const = default;

 private:
  std::vector<std::string> components_;
  std::optional<std::uint64_t> segment_;
};

struct NameHash {
  std::size_t operator()(const Name& n) const;
};

struct Interest {
  Name name;
  std::uint32_t nonce = 0;
};

struct Data {
  Name name;
  std::vector<std::uint8_t> content;
  std::uint32_t final_segment = 0;
  std::string producer_id;  // local bookkeeping only, never on the wire
  std::vector<std::uint8_t> signature;
};

enum class NackReason : std::uint8_t { kNoRoute = 1 };

struct Nack {
  Name name;
  NackReason reason = NackReason::kNoRoute;
};

using Packet = std::variant<Interest, Data, Nack>;

const Name& packet_name(const Packet& p);

std::vector<std::uint8_t> encode(const Packet& p);
/// Decodes one complete frame. Throws DecodeError.
Packet decode(std::span<const std::uint8_t> frame);

/// Bytes covered by a Data signature: u16 name length | name | u32 final_segment | content.
std::vector<std::uint8_t> signed_portion(const Data& d);

}  // namespace abbe::ndn
