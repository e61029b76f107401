// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/formats.hpp"

#include <algorithm>
#include <set>

#include "abbe/errors.hpp"

namespace abbe::formats {

namespace {

std::string escape(std::string_view key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string at(const std::string& path, std::string_view key) { return path + "/" + escape(key); }
std::string at(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

[[noreturn]] void fail(const std::string& path, const std::string& reason) { throw SchemaViolation(path, reason); }

void expect_object(const json& j, const std::string& path, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  if (!j.is_object()) fail(path, "expected an object");
  std::set<std::string> known;
  for (const char* k : required) known.insert(k);
  for (const char* k : optional) known.insert(k);
  // Report the alphabetically first problem so diagnostics are stable.
  std::set<std::string> missing;
  for (const char* k : required)
    if (!j.contains(k)) missing.insert(k);
  std::string unknown;
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (!known.count(it.key())) {
      unknown = it.key();
      break;
    }
  }
  if (!missing.empty() && (unknown.empty() || *missing.begin() < unknown))
    fail(at(path, *missing.begin()), "missing required field");
  if (!unknown.empty()) fail(at(path, unknown), "unexpected field");
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

std::string get_name(const json& j, const std::string& path, const char* what) {
  std::string s = get_string(j, path);
  if (s.empty() || s.size() > kMaxAttributeNameBytes) fail(path, std::string(what) + " must be 1..64 bytes");
  return s;
}

const json& get_array(const json& j, const std::string& path) {
  if (!j.is_array()) fail(path, "expected an array");
  return j;
}

std::vector<std::string> name_list(const json& j, const std::string& path, const char* what) {
  get_array(j, path);
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (std::size_t i = 0; i < j.size(); ++i) {
    std::string s = get_name(j[i], at(path, i), what);
    if (!seen.insert(s).second) fail(at(path, i), std::string("duplicate ") + what + " '" + s + "'");
    out.push_back(std::move(s));
  }
  return out;
}

std::set<std::string> name_set(const json& j, const std::string& path, const char* what) {
  auto v = name_list(j, path, what);
  return {v.begin(), v.end()};
}

std::vector<std::uint8_t> get_hex(const json& j, const std::string& path, std::size_t len) {
  std::string s = get_string(j, path);
  std::vector<std::uint8_t> out;
  try {
    out = from_hex(s);
  } catch (const Error&) {
    fail(path, "malformed hex");
  }
  if (out.size() != len) fail(path, "expected " + std::to_string(len) + " bytes of hex");
  return out;
}

mpz_class get_int(const json& j, const std::string& path) {
  std::string s = get_string(j, path);
  if (s.size() < 3 || s[0] != '0' || s[1] != 'x') fail(path, "expected 0x-prefixed hex integer");
  try {
    return mpz_from_hex(s);
  } catch (const Error&) {
    fail(path, "malformed hex integer");
  }
}

std::string hex(std::span<const std::uint8_t> b) { return to_hex(b); }

json scalar_json(const Scalar& s) { return s.to_hex(); }

Scalar get_scalar(const json& j, const std::string& path, const Curve& c) {
  mpz_class v = get_int(j, path);
  if (v >= c.params().r) fail(path, "scalar not reduced modulo r");
  return Scalar(c, v);
}

template <class T>
T decode_at(const json& j, const std::string& path, const Curve& c, std::size_t len) {
  auto bytes = get_hex(j, path, len);
  try {
    return T::decode(c, bytes);
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

json names(const std::set<std::string>& s) { return json(std::vector<std::string>(s.begin(), s.end())); }

}  // namespace

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail("", std::string("invalid JSON: ") + e.what());
  }
}

std::string canonical(const json& j) { return j.dump(-1, ' ', false, json::error_handler_t::strict); }

// ---------------------------------------------------------------- curve

json curve_to_json(const CurveParams& p) {
  json j;
  j["family"] = p.family;
  j["u"] = mpz_to_hex(mpz_class(std::to_string(p.u)));
  j["p"] = mpz_to_hex(p.p);
  j["r"] = mpz_to_hex(p.r);
  j["security_bits"] = p.security_bits;
  j["g1"] = hex(p.g1);
  j["g2"] = hex(p.g2);
  return j;
}

CurveParams curve_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"family", "g1", "g2", "p", "r", "security_bits", "u"});
  CurveParams p;
  p.family = get_string(j["family"], at(path, "family"));
  if (p.family != "BN") fail(at(path, "family"), "unsupported curve family");
  mpz_class u = get_int(j["u"], at(path, "u"));
  if (u <= 0 || mpz_sizeinbase(u.get_mpz_t(), 2) > 64) fail(at(path, "u"), "u must be a positive 64-bit integer");
  p.u = std::stoull(u.get_str(16), nullptr, 16);
  p.p = get_int(j["p"], at(path, "p"));
  p.r = get_int(j["r"], at(path, "r"));
  const json& sb = j["security_bits"];
  if (!sb.is_number_integer()) fail(at(path, "security_bits"), "expected an integer");
  p.security_bits = sb.get<int>();
  p.g1 = get_hex(j["g1"], at(path, "g1"), kG1Bytes);
  p.g2 = get_hex(j["g2"], at(path, "g2"), kG2Bytes);
  return p;
}

CurvePtr build_curve(const CurveParams& params, const std::string& path) {
  try {
    return Curve::from_params(params);
  } catch (const SchemaViolation&) {
    throw;
  } catch (const Error& e) {
    fail(path, e.what());
  }
}

// ---------------------------------------------------------------- policy

json policy_to_json(const AccessPolicy& p) {
  json j;
  j["attributes"] = names(p.required_attributes);
  j["revoked"] = names(p.revoked_users);
  return j;
}

AccessPolicy policy_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"attributes", "revoked"});
  AccessPolicy p;
  p.required_attributes = name_set(j["attributes"], at(path, "attributes"), "attribute");
  if (p.required_attributes.empty()) fail(at(path, "attributes"), "policy needs at least one attribute");
  auto revoked = get_array(j["revoked"], at(path, "revoked"));
  std::set<std::string> seen;
  for (std::size_t i = 0; i < revoked.size(); ++i) {
    std::string id = get_string(revoked[i], at(at(path, "revoked"), i));
    if (id.empty()) fail(at(at(path, "revoked"), i), "empty user id");
    if (!seen.insert(id).second) fail(at(at(path, "revoked"), i), "duplicate user id");
  }
  p.revoked_users = seen;
  return p;
}

// ---------------------------------------------------------------- config

bool ConfigFile::operator==(const ConfigFile& o) const {
  return save_config(*this) == save_config(o);
}

ConfigFile load_config(std::string_view text) {
  json j = parse(text);
  expect_object(j, "", {"attribute_pool", "curve", "policy", "users"});
  ConfigFile c;
  c.attribute_pool = name_list(j["attribute_pool"], "/attribute_pool", "attribute");
  if (c.attribute_pool.empty()) fail("/attribute_pool", "attribute pool is empty");
  c.curve = curve_from_json(j["curve"], "/curve");
  std::set<std::string> pool(c.attribute_pool.begin(), c.attribute_pool.end());

  const json& users = get_array(j["users"], "/users");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < users.size(); ++i) {
    std::string p = at("/users", i);
    expect_object(users[i], p, {"attributes", "id"});
    UserRecord u;
    u.user_id = get_string(users[i]["id"], at(p, "id"));
    if (u.user_id.empty()) fail(at(p, "id"), "empty user id");
    if (!ids.insert(u.user_id).second) fail(at(p, "id"), "duplicate user id '" + u.user_id + "'");
    auto attrs = name_list(users[i]["attributes"], at(p, "attributes"), "attribute");
    if (attrs.empty()) fail(at(p, "attributes"), "user needs at least one attribute");
    for (std::size_t k = 0; k < attrs.size(); ++k)
      if (!pool.count(attrs[k])) fail(at(at(p, "attributes"), k), "attribute '" + attrs[k] + "' not in attribute_pool");
    u.attributes = {attrs.begin(), attrs.end()};
    c.users.push_back(std::move(u));
  }

  c.policy = policy_from_json(j["policy"], "/policy");
  const json& pa = j["policy"]["attributes"];
  for (std::size_t k = 0; k < pa.size(); ++k)
    if (!pool.count(pa[k].get<std::string>()))
      fail(at("/policy/attributes", k), "attribute '" + pa[k].get<std::string>() + "' not in attribute_pool");
  const json& pr = j["policy"]["revoked"];
  for (std::size_t k = 0; k < pr.size(); ++k)
    if (!ids.count(pr[k].get<std::string>()))
      fail(at("/policy/revoked", k), "revoked user '" + pr[k].get<std::string>() + "' not in users");
  return c;
}

std::string save_config(const ConfigFile& c) {
  json j;
  j["attribute_pool"] = c.attribute_pool;
  j["curve"] = curve_to_json(c.curve);
  j["policy"] = policy_to_json(c.policy);
  j["users"] = json::array();
  for (const auto& u : c.users) j["users"].push_back({{"id", u.user_id}, {"attributes", names(u.attributes)}});
  return canonical(j);
}

// ---------------------------------------------------------------- keys

namespace {

json mpk_json(const MasterPublicKey& m) {
  json j;
  j["curve"] = curve_to_json(m.curve->params());
  j["universe"] = m.universe.attributes;
  j["z"] = hex(m.z.encode());
  j["beta_powers"] = json::array();
  for (const auto& b : m.beta_powers) j["beta_powers"].push_back(hex(b.encode()));
  j["users"] = json::array();
  for (const auto& u : m.users)
    j["users"].push_back({{"id", u.user_id}, {"x", scalar_json(u.x)}, {"p", hex(u.p.encode())}, {"y", hex(u.y.encode())}});
  return j;
}

MasterPublicKey mpk_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"beta_powers", "curve", "universe", "users", "z"});
  MasterPublicKey m;
  m.curve = build_curve(curve_from_json(j["curve"], at(path, "curve")), at(path, "curve"));
  const Curve& c = *m.curve;
  m.universe.attributes = name_list(j["universe"], at(path, "universe"), "attribute");
  if (m.universe.attributes.empty()) fail(at(path, "universe"), "attribute universe is empty");
  m.z = decode_at<GT>(j["z"], at(path, "z"), c, kGtBytes);
  const json& bp = get_array(j["beta_powers"], at(path, "beta_powers"));
  if (bp.size() != m.universe.attributes.size() + 1)
    fail(at(path, "beta_powers"), "expected |universe| + 1 elements");
  for (std::size_t i = 0; i < bp.size(); ++i)
    m.beta_powers.push_back(decode_at<G1>(bp[i], at(at(path, "beta_powers"), i), c, kG1Bytes));
  const json& users = get_array(j["users"], at(path, "users"));
  std::set<std::string> ids;
  for (std::size_t i = 0; i < users.size(); ++i) {
    std::string p = at(at(path, "users"), i);
    expect_object(users[i], p, {"id", "p", "x", "y"});
    PublicUser u;
    u.user_id = get_string(users[i]["id"], at(p, "id"));
    if (u.user_id.empty() || !ids.insert(u.user_id).second) fail(at(p, "id"), "empty or duplicate user id");
    u.x = get_scalar(users[i]["x"], at(p, "x"), c);
    u.p = decode_at<G1>(users[i]["p"], at(p, "p"), c, kG1Bytes);
    u.y = decode_at<GT>(users[i]["y"], at(p, "y"), c, kGtBytes);
    m.users.push_back(std::move(u));
  }
  return m;
}

json msk_json(const MasterSecretKey& m) {
  json j;
  j["alpha"] = scalar_json(m.alpha);
  j["beta"] = scalar_json(m.beta);
  j["gamma"] = scalar_json(m.gamma);
  j["users"] = json::array();
  for (const auto& u : m.users)
    j["users"].push_back({{"id", u.user_id},
                          {"attributes", names(u.attributes)},
                          {"x", scalar_json(u.x)},
                          {"omega", scalar_json(u.omega)}});
  return j;
}

MasterSecretKey msk_from_json(const json& j, const std::string& path, const MasterPublicKey& mpk) {
  expect_object(j, path, {"alpha", "beta", "gamma", "users"});
  const Curve& c = *mpk.curve;
  MasterSecretKey m;
  m.curve = mpk.curve;
  m.universe = mpk.universe;
  m.alpha = get_scalar(j["alpha"], at(path, "alpha"), c);
  m.beta = get_scalar(j["beta"], at(path, "beta"), c);
  m.gamma = get_scalar(j["gamma"], at(path, "gamma"), c);
  const json& users = get_array(j["users"], at(path, "users"));
  std::set<std::string> ids;
  for (std::size_t i = 0; i < users.size(); ++i) {
    std::string p = at(at(path, "users"), i);
    expect_object(users[i], p, {"attributes", "id", "omega", "x"});
    SecretUser u;
    u.user_id = get_string(users[i]["id"], at(p, "id"));
    if (u.user_id.empty() || !ids.insert(u.user_id).second) fail(at(p, "id"), "empty or duplicate user id");
    u.attributes = name_set(users[i]["attributes"], at(p, "attributes"), "attribute");
    for (const auto& a : u.attributes)
      if (!m.universe.contains(a)) fail(at(p, "attributes"), "attribute '" + a + "' not in universe");
    u.x = get_scalar(users[i]["x"], at(p, "x"), c);
    u.omega = get_scalar(users[i]["omega"], at(p, "omega"), c);
    m.users.push_back(std::move(u));
  }
  return m;
}

}  // namespace

const UserPrivateKey* KeysFile::find_key(const std::string& id) const {
  for (const auto& k : user_keys)
    if (k.user_id == id) return &k;
  return nullptr;
}

KeysFile load_keys(std::string_view text) {
  json j = parse(text);
  expect_object(j, "", {"mpk", "user_keys"}, {"msk"});
  KeysFile k;
  k.mpk = mpk_from_json(j["mpk"], "/mpk");
  if (j.contains("msk")) k.msk = msk_from_json(j["msk"], "/msk", k.mpk);
  const Curve& c = *k.mpk.curve;
  const json& keys = get_array(j["user_keys"], "/user_keys");
  std::set<std::string> ids;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    std::string p = at("/user_keys", i);
    expect_object(keys[i], p, {"attributes", "elements", "id"});
    UserPrivateKey u;
    u.user_id = get_string(keys[i]["id"], at(p, "id"));
    if (!k.mpk.find_user(u.user_id)) fail(at(p, "id"), "user '" + u.user_id + "' not in master public key");
    if (!ids.insert(u.user_id).second) fail(at(p, "id"), "duplicate key for user '" + u.user_id + "'");
    u.attributes = name_set(keys[i]["attributes"], at(p, "attributes"), "attribute");
    if (u.attributes.empty()) fail(at(p, "attributes"), "key needs at least one attribute");
    const json& el = get_array(keys[i]["elements"], at(p, "elements"));
    if (el.size() != u.attributes.size() + 2) fail(at(p, "elements"), "expected 2 + |attributes| elements");
    for (std::size_t e = 0; e < el.size(); ++e)
      u.elements.push_back(decode_at<G2>(el[e], at(at(p, "elements"), e), c, kG2Bytes));
    k.user_keys.push_back(std::move(u));
  }
  return k;
}

std::string save_keys(const KeysFile& k) {
  json j;
  j["mpk"] = mpk_json(k.mpk);
  if (k.msk) j["msk"] = msk_json(*k.msk);
  j["user_keys"] = json::array();
  for (const auto& u : k.user_keys) {
    json e = json::array();
    for (const auto& x : u.elements) e.push_back(hex(x.encode()));
    j["user_keys"].push_back({{"id", u.user_id}, {"attributes", names(u.attributes)}, {"elements", e}});
  }
  return canonical(j);
}

std::string save_msk(const MasterSecretKey& msk) { return canonical(json{{"msk", msk_json(msk)}}); }

MasterSecretKey load_msk(std::string_view text, const MasterPublicKey& mpk) {
  json j = parse(text);
  expect_object(j, "", {"msk"});
  return msk_from_json(j["msk"], "/msk", mpk);
}

void check_keys_match_config(const KeysFile& keys, const ConfigFile& config) {
  for (std::size_t i = 0; i < config.users.size(); ++i) {
    const auto& u = config.users[i];
    const UserPrivateKey* k = keys.find_key(u.user_id);
    if (k == nullptr) fail(at("/users", i), "no key entry for user '" + u.user_id + "'");
    if (k->attributes != u.attributes) fail(at("/users", i), "key attributes differ from configuration");
  }
  if (keys.user_keys.size() != config.users.size()) fail("/user_keys", "key entries for users not in configuration");
}

KeysFile generate_keys(const ConfigFile& config, Rng& rng) {
  CurvePtr curve = build_curve(config.curve);
  auto [mpk, msk] = setup(curve, config.universe(), config.users, rng);
  KeysFile out{std::move(mpk), std::nullopt, {}};
  out.user_keys.reserve(config.users.size());
  for (const auto& u : config.users) out.user_keys.push_back(keygen(msk, u));
  out.msk = std::move(msk);
  return out;
}

// ---------------------------------------------------------------- header

HeaderFile header_from_json(const json& j, const std::string& path) {
  expect_object(j, path, {"elements", "kdf", "policy"});
  HeaderFile h;
  h.policy = policy_from_json(j["policy"], at(path, "policy"));
  h.kdf = get_string(j["kdf"], at(path, "kdf"));
  if (h.kdf != kKdfTag) fail(at(path, "kdf"), "unsupported kdf '" + h.kdf + "'");
  const std::string el_path = at(path, "elements");
  const json& el = get_array(j["elements"], el_path);
  if (el.size() != h.policy.revoked_users.size() + 3) fail(el_path, "expected |revoked| + 3 elements");
  for (std::size_t i = 0; i < el.size(); ++i) h.elements.push_back(get_hex(el[i], at(el_path, i), kG1Bytes));
  return h;
}

json header_to_json(const HeaderFile& h) {
  json j;
  j["policy"] = policy_to_json(h.policy);
  j["kdf"] = h.kdf;
  j["elements"] = json::array();
  for (const auto& e : h.elements) j["elements"].push_back(hex(e));
  return j;
}

HeaderFile load_header(std::string_view text) { return header_from_json(parse(text), ""); }

std::string save_header(const HeaderFile& h) { return canonical(header_to_json(h)); }

HeaderFile header_file_from(const AbbeHeader& header) {
  HeaderFile h;
  h.policy = header.policy;
  for (const auto& e : header.elements) h.elements.push_back(e.encode());
  return h;
}

AbbeHeader to_abbe_header(const HeaderFile& header, const Curve& curve, const std::string& path) {
  AbbeHeader h;
  h.policy = header.policy;
  for (std::size_t i = 0; i < header.elements.size(); ++i) {
    try {
      h.elements.push_back(G1::decode(curve, header.elements[i]));
    } catch (const Error& e) {
      fail(at(at(path, "elements"), i), e.what());
    }
  }
  return h;
}

}  // namespace abbe::formats
