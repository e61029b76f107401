// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/rooms.hpp"

#include <openssl/evp.h>

#include <cctype>
#include <chrono>
#include <set>

#include "abbe/errors.hpp"
#include "abbe/formats.hpp"
#include "abbe/hash.hpp"

namespace abbe::rooms {

namespace {

using formats::json;

std::string base64(std::span<const std::uint8_t> in) {
  std::string out(4 * ((in.size() + 2) / 3), '\0');
  int n = EVP_EncodeBlock(reinterpret_cast<unsigned char*>(out.data()), in.data(), static_cast<int>(in.size()));
  out.resize(static_cast<std::size_t>(n));
  return out;
}

std::vector<std::uint8_t> unbase64(const std::string& in, const std::string& path) {
  if (in.size() % 4 != 0) throw SchemaViolation(path, "invalid base64 length");
  for (char c : in)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '+' && c != '/' && c != '=')
      throw SchemaViolation(path, "invalid base64 character");
  std::vector<std::uint8_t> out(in.size() / 4 * 3);
  int n = EVP_DecodeBlock(out.data(), reinterpret_cast<const unsigned char*>(in.data()), static_cast<int>(in.size()));
  if (n < 0) throw SchemaViolation(path, "invalid base64");
  std::size_t pad = 0;
  if (!in.empty() && in.back() == '=') ++pad;
  if (in.size() > 1 && in[in.size() - 2] == '=') ++pad;
  out.resize(static_cast<std::size_t>(n) - pad);
  if (base64(out) != in) throw SchemaViolation(path, "non-canonical base64");
  return out;
}

template <std::size_t N>
std::array<std::uint8_t, N> fixed(const std::vector<std::uint8_t>& v, const std::string& path) {
  if (v.size() != N) throw SchemaViolation(path, "expected " + std::to_string(N) + " bytes");
  std::array<std::uint8_t, N> a{};
  std::copy(v.begin(), v.end(), a.begin());
  return a;
}

std::string aad_name(const RoomId& room, const std::string& sender, std::int64_t timestamp) {
  return "chat:" + room.hex() + ":" + sender + ":" + std::to_string(timestamp);
}

const std::string& get_string(const json& j, const char* key) {
  const json& v = j.at(key);
  if (!v.is_string()) throw SchemaViolation(std::string("/") + key, "expected a string");
  return v.get_ref<const std::string&>();
}

}  // namespace

RoomId room_id(const AccessPolicy& policy) {
  std::string text = formats::canonical(formats::policy_to_json(policy));
  RoomId id;
  id.digest = sha256(as_bytes(text));
  return id;
}

MessageEnvelope post_message(const MasterPublicKey& mpk, const AccessPolicy& policy, const std::string& sender_id,
                             std::span<const std::uint8_t> plaintext, Rng& rng, std::optional<std::int64_t> timestamp) {
  if (sender_id.empty()) throw Error(ErrorCode::kInvalidArgument, "sender id must be non-empty");
  auto [key, header] = encapsulate(mpk, policy, rng);
  MessageEnvelope env;
  env.sender_id = sender_id;
  env.timestamp = timestamp.value_or(std::chrono::duration_cast<std::chrono::milliseconds>(
                                         std::chrono::system_clock::now().time_since_epoch())
                                         .count());
  auto obj = content::encrypt_object(key, plaintext, aad_name(room_id(policy), sender_id, env.timestamp), rng);
  env.header = std::move(header);
  env.nonce = obj.nonce;
  env.ciphertext = std::move(obj.ciphertext);
  env.tag = obj.tag;
  return env;
}

std::optional<ReceivedMessage> receive_message(const MessageEnvelope& envelope, const UserPrivateKey& key,
                                               const MasterPublicKey& mpk) {
  std::optional<SessionKey> session = decapsulate(mpk, key, envelope.header);
  if (!session) return std::nullopt;
  ReceivedMessage m;
  m.room = room_id(envelope.header.policy);
  m.sender_id = envelope.sender_id;
  m.timestamp = envelope.timestamp;
  content::EncryptedObject obj{envelope.nonce, envelope.ciphertext, envelope.tag,
                               aad_name(m.room, envelope.sender_id, envelope.timestamp)};
  m.plaintext = content::decrypt_object(*session, obj);
  return m;
}

std::string envelope_to_json(const MessageEnvelope& e) {
  json j;
  j["header"] = formats::header_to_json(formats::header_file_from(e.header));
  j["nonce"] = base64(e.nonce);
  j["ciphertext"] = base64(e.ciphertext);
  j["tag"] = base64(e.tag);
  j["sender_id"] = e.sender_id;
  j["timestamp"] = e.timestamp;
  return formats::canonical(j);
}

MessageEnvelope envelope_from_json(std::string_view text, const Curve& curve) {
  json j = formats::parse(text);
  if (!j.is_object()) throw SchemaViolation("", "expected an object");
  static const std::set<std::string> kKeys = {"ciphertext", "header", "nonce", "sender_id", "tag", "timestamp"};
  std::set<std::string> problems;
  for (const auto& k : kKeys)
    if (!j.contains(k)) problems.insert(k);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!kKeys.count(it.key())) problems.insert(it.key());
  if (!problems.empty()) {
    const std::string& k = *problems.begin();
    throw SchemaViolation("/" + k, kKeys.count(k) ? "missing required field" : "unknown field");
  }
  MessageEnvelope e;
  auto hf = formats::header_from_json(j["header"], "/header");
  e.header = formats::to_abbe_header(hf, curve, "/header");
  e.nonce = fixed<content::kNonceBytes>(unbase64(get_string(j, "nonce"), "/nonce"), "/nonce");
  e.ciphertext = unbase64(get_string(j, "ciphertext"), "/ciphertext");
  e.tag = fixed<content::kTagBytes>(unbase64(get_string(j, "tag"), "/tag"), "/tag");
  e.sender_id = get_string(j, "sender_id");
  if (e.sender_id.empty()) throw SchemaViolation("/sender_id", "must be non-empty");
  const json& ts = j["timestamp"];
  if (!ts.is_number_integer() || ts.get<std::int64_t>() < 0) throw SchemaViolation("/timestamp", "expected a non-negative integer");
  e.timestamp = ts.get<std::int64_t>();
  return e;
}

ndn::Name message_name(const std::string& sender_id, std::uint64_t seq) {
  return ndn::Name({"chat", sender_id, std::to_string(seq)});
}

void RoomDirectory::add(ReceivedMessage message) { rooms_[message.room].push_back(std::move(message)); }

const std::vector<ReceivedMessage>* RoomDirectory::room(const RoomId& id) const {
  auto it = rooms_.find(id);
  return it == rooms_.end() ? nullptr : &it->second;
}

}  // namespace abbe::rooms
