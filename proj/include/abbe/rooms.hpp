// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Virtual chatrooms: messages are encrypted under an access policy and
// grouped by that policy. Whether a user is a recipient is decided by trying
// to decapsulate the message header.

#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "abbe/abbe.hpp"
#include "abbe/content.hpp"
#include "abbe/ndn/packet.hpp"

namespace abbe::rooms {

struct RoomId {
  std::array<std::uint8_t, 32> digest{};
  std::string hex() const { return to_hex(digest); }
  auto operator<=>(const RoomId&) const = default;
};

/// SHA-256 of the canonical policy JSON (attributes and revoked ids sorted).
RoomId room_id(const AccessPolicy& policy);

struct MessageEnvelope {
  AbbeHeader header;
  std::array<std::uint8_t, content::kNonceBytes> nonce{};
  std::vector<std::uint8_t> ciphertext;
  std::array<std::uint8_t, content::kTagBytes> tag{};
  std::string sender_id;
  std::int64_t timestamp = 0;  // milliseconds since the Unix epoch
};

/// Fresh session key per message. `timestamp` defaults to the system clock.
MessageEnvelope post_message(const MasterPublicKey& mpk, const AccessPolicy& policy, const std::string& sender_id,
                             std::span<const std::uint8_t> plaintext, Rng& rng,
                             std::optional<std::int64_t> timestamp = std::nullopt);

struct ReceivedMessage {
  RoomId room;
  std::string sender_id;
  std::int64_t timestamp = 0;
  std::vector<std::uint8_t> plaintext;
};

/// nullopt when the key holder is not a recipient. Throws AuthFailure when the
/// header opens but the body does not authenticate.
std::optional<ReceivedMessage> receive_message(const MessageEnvelope& envelope, const UserPrivateKey& key,
                                               const MasterPublicKey& mpk);

std::string envelope_to_json(const MessageEnvelope& envelope);
/// Throws SchemaViolation with the JSON path of the first problem.
MessageEnvelope envelope_from_json(std::string_view text, const Curve& curve);

/// "/chat/<sender>/<seq>"
ndn::Name message_name(const std::string& sender_id, std::uint64_t seq);

/// Received messages grouped by room, in arrival order.
class RoomDirectory {
 public:
  void add(ReceivedMessage message);
  const std::map<RoomId, std::vector<ReceivedMessage>>& rooms() const { return rooms_; }
  const std::vector<ReceivedMessage>* room(const RoomId& id) const;

 private:
  std::map<RoomId, std::vector<ReceivedMessage>> rooms_;
};

}  // namespace abbe::rooms
