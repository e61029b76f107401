// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Payload encryption under a session key with AES-256-GCM.
//
// On-disk ".aes" layout:
//   "ABBE1" | nonce (12) | u16 BE name length | header name (UTF-8)
//   | ciphertext (same length as plaintext) | tag (16)
// The associated data is "ABBE1" | u16 name length | name, so the tag also
// authenticates which header the object belongs to. Streams are processed in
// 1 MiB chunks; a single GCM invocation covers the whole payload.

#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <memory>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "abbe/abbe.hpp"
#include "abbe/rng.hpp"

namespace abbe::content {

inline constexpr std::string_view kMagic = "ABBE1";
inline constexpr std::size_t kNonceBytes = 12;
inline constexpr std::size_t kTagBytes = 16;
inline constexpr std::size_t kChunkBytes = std::size_t{1} << 20;

struct EncryptedObject {
  std::array<std::uint8_t, kNonceBytes> nonce{};
  std::vector<std::uint8_t> ciphertext;
  std::array<std::uint8_t, kTagBytes> tag{};
  std::string header_name;
  bool operator==(const EncryptedObject&) const = default;
};

EncryptedObject encrypt_object(const SessionKey& key, std::span<const std::uint8_t> plaintext,
                               const std::string& header_name, Rng& rng);
/// Throws AuthFailure on a wrong key or any modification.
std::vector<std::uint8_t> decrypt_object(const SessionKey& key, const EncryptedObject& obj);

std::vector<std::uint8_t> serialize(const EncryptedObject& obj);
/// Parses the on-disk layout; throws DecodeError if truncated or not ".aes".
EncryptedObject parse(std::span<const std::uint8_t> bytes);

/// Streams plaintext from `in` into the on-disk layout on `out`.
void encrypt_stream(const SessionKey& key, std::istream& in, std::ostream& out, const std::string& header_name,
                    Rng& rng);
/// Streams an on-disk object from `in`, writing plaintext to `out` as it goes.
/// Output written before an AuthFailure is unauthenticated; callers that
/// persist it must discard it on failure (decrypt_file does).
/// Returns the header name stored in the object.
std::string decrypt_stream(const SessionKey& key, std::istream& in, std::ostream& out);

/// Push-style decryption of the on-disk layout, for objects that arrive in
/// pieces. Plaintext is released as soon as it is known not to be tag bytes,
/// so it is unauthenticated until finish() returns.
class StreamDecryptor {
 public:
  using Sink = std::function<void(std::span<const std::uint8_t>)>;
  StreamDecryptor(const SessionKey& key, Sink sink);
  ~StreamDecryptor();
  StreamDecryptor(const StreamDecryptor&) = delete;
  StreamDecryptor& operator=(const StreamDecryptor&) = delete;

  void feed(std::span<const std::uint8_t> bytes);
  /// Verifies the tag and returns the header name. Throws AuthFailure or
  /// DecodeError.
  std::string finish();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

void encrypt_file(const SessionKey& key, const std::filesystem::path& in, const std::filesystem::path& out,
                  const std::string& header_name, Rng& rng);
/// Decrypts into a temporary sibling of `out` and renames it into place only
/// after the tag verifies.
std::string decrypt_file(const SessionKey& key, const std::filesystem::path& in, const std::filesystem::path& out);

}  // namespace abbe::content
