// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// JSON artifacts exchanged by the tools: configuration, keys and header
// files. Output is canonical (sorted keys, no insignificant whitespace);
// input is validated field by field and the first problem is reported as a
// SchemaViolation carrying its JSON pointer.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "abbe/abbe.hpp"

namespace abbe::formats {

using json = nlohmann::json;

inline constexpr std::string_view kHeaderName = "/headers/header.json";

/// Parses UTF-8 JSON text; malformed input is a SchemaViolation at "".
json parse(std::string_view text);
/// Canonical text form: sorted keys, compact separators.
std::string canonical(const json& j);

// Curve description -------------------------------------------------------

json curve_to_json(const CurveParams& params);
CurveParams curve_from_json(const json& j, const std::string& path = "/curve");
/// Instantiates and fully validates a curve description; any failure is a
/// SchemaViolation at `path`.
CurvePtr build_curve(const CurveParams& params, const std::string& path = "/curve");

// Policies ----------------------------------------------------------------

json policy_to_json(const AccessPolicy& policy);
AccessPolicy policy_from_json(const json& j, const std::string& path = "/policy");

// Configuration file ------------------------------------------------------

struct ConfigFile {
  CurveParams curve;
  std::vector<UserRecord> users;
  AccessPolicy policy;
  std::vector<std::string> attribute_pool;

  AttributeUniverse universe() const { return {attribute_pool}; }
  bool operator==(const ConfigFile& o) const;
};

ConfigFile load_config(std::string_view text);
std::string save_config(const ConfigFile& config);

// Keys file ---------------------------------------------------------------

struct KeysFile {
  MasterPublicKey mpk;
  std::optional<MasterSecretKey> msk;  // absent when written with --split
  std::vector<UserPrivateKey> user_keys;

  const UserPrivateKey* find_key(const std::string& user_id) const;
};

KeysFile load_keys(std::string_view text);
std::string save_keys(const KeysFile& keys);
/// Stand-alone master secret key file, {"msk": {...}}; loading needs the
/// public key it belongs to.
std::string save_msk(const MasterSecretKey& msk);
MasterSecretKey load_msk(std::string_view text, const MasterPublicKey& mpk);
/// Every configured user has exactly one key entry and nothing else does.
void check_keys_match_config(const KeysFile& keys, const ConfigFile& config);
/// Runs setup for the configured users and issues one key each.
KeysFile generate_keys(const ConfigFile& config, Rng& rng);

// Header file -------------------------------------------------------------

struct HeaderFile {
  AccessPolicy policy;
  std::vector<std::vector<std::uint8_t>> elements;  // canonical G1 encodings
  std::string kdf = std::string(kKdfTag);
  bool operator==(const HeaderFile&) const = default;
};

HeaderFile load_header(std::string_view text);
/// Object-level forms for embedding a header in other documents; errors are
/// reported under `path`.
HeaderFile header_from_json(const json& j, const std::string& path);
json header_to_json(const HeaderFile& header);
std::string save_header(const HeaderFile& header);
HeaderFile header_file_from(const AbbeHeader& header);
/// Decodes the element bytes on `curve`; bad points are reported at
/// <path>/elements/<i>.
AbbeHeader to_abbe_header(const HeaderFile& header, const Curve& curve, const std::string& path = "");

}  // namespace abbe::formats
