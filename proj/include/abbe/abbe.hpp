// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Ciphertext-policy attribute-based broadcast KEM: AND-gate policies over a
// fixed attribute universe, plus revocation of individual users.
//
// Key material layout
//   msk  : alpha, beta, gamma; per user (x_u, omega_u)
//   mpk  : Z = e(g1, g2)^alpha; g1^(beta^i) for i = 0..|universe|;
//          per user x_u, P_u = g1^(1/(gamma + x_u)), Y_u = Z^(1/(gamma + x_u))
//   key  : D0 = g2^(alpha + t), L = g2^omega, D_j = g2^(t / (beta + a_j)),
//          with t = omega / (gamma + x_u) and a_j = H(attribute j)
//   header (policy P, revoked set R, random s):
//          C0 = g1^s, T = g1^(s / Q(gamma)), C_attr = g1^(s * prod_P (beta + a_j)),
//          C_v = P_v^s for v in R, where Q(X) = prod_R (X + x_v)
//   key  : kappa = Z^(s / Q(gamma)), hashed into the session key.

#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "abbe/curve.hpp"

namespace abbe {

inline constexpr std::size_t kMaxAttributeNameBytes = 64;
inline constexpr std::string_view kKdfTag = "abbe-kem-v1";

using AttributeSet = std::set<std::string>;

struct AttributeUniverse {
  std::vector<std::string> attributes;  // ordered, unique
  bool contains(const std::string& a) const;
};

struct UserRecord {
  std::string user_id;
  AttributeSet attributes;
  bool operator==(const UserRecord&) const = default;
};

struct AccessPolicy {
  AttributeSet required_attributes;
  std::set<std::string> revoked_users;
  bool operator==(const AccessPolicy&) const = default;
};

struct SessionKey {
  std::array<std::uint8_t, 32> bytes{};
  std::string hex() const { return to_hex(bytes); }
  bool operator==(const SessionKey&) const = default;
};

struct PublicUser {
  std::string user_id;
  Scalar x;
  G1 p;  // g1^(1/(gamma + x))
  GT y;  // Z^(1/(gamma + x))
};

struct MasterPublicKey {
  CurvePtr curve;
  AttributeUniverse universe;
  GT z;
  std::vector<G1> beta_powers;  // g1^(beta^i), i = 0..|universe|
  std::vector<PublicUser> users;

  const PublicUser* find_user(const std::string& id) const;
  /// Flattened group elements, in serialization order.
  std::vector<GroupElement> public_elements() const;
};

struct SecretUser {
  std::string user_id;
  AttributeSet attributes;
  Scalar x;
  Scalar omega;
};

struct MasterSecretKey {
  CurvePtr curve;
  AttributeUniverse universe;
  Scalar alpha, beta, gamma;
  std::vector<SecretUser> users;

  const SecretUser* find_user(const std::string& id) const;
};

struct UserPrivateKey {
  std::string user_id;
  AttributeSet attributes;
  std::vector<G2> elements;  // D0, L, then D_j in attribute order
};

struct AbbeHeader {
  AccessPolicy policy;
  std::vector<G1> elements;  // C0, T, C_attr, then C_v in revoked-user order
};

/// Validates the universe: non-empty unique names of at most 64 bytes.
void validate_universe(const AttributeUniverse& universe);

/// Hash of an attribute name into the scalar field.
Scalar attribute_scalar(const Curve& curve, const std::string& name);

std::pair<MasterPublicKey, MasterSecretKey> setup(const CurvePtr& curve, const AttributeUniverse& universe,
                                                  const std::vector<UserRecord>& registry, Rng& rng);

UserPrivateKey keygen(const MasterSecretKey& msk, const UserRecord& user);

std::pair<SessionKey, AbbeHeader> encapsulate(const MasterPublicKey& mpk, const AccessPolicy& policy, Rng& rng);

/// Returns the session key, or nullopt when the key holder does not satisfy
/// the header policy (missing attribute or revoked).
std::optional<SessionKey> decapsulate(const MasterPublicKey& mpk, const UserPrivateKey& key,
                                      const AbbeHeader& header);

/// Plain-set reference predicate: required attributes held and not revoked.
bool policy_satisfies(const AccessPolicy& policy, const UserRecord& user);

SessionKey derive_session_key(const GT& kappa);

}  // namespace abbe
