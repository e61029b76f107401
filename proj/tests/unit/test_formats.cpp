// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "abbe/errors.hpp"
#include "abbe/formats.hpp"

namespace abbe::formats {
namespace {

ConfigFile random_config(Rng& rng, int pool_size, int nusers, int per_user) {
  ConfigFile c;
  c.curve = default_curve()->params();
  for (int i = 0; i < pool_size; ++i) c.attribute_pool.push_back("attr-" + std::to_string(rng.next_u64() % 100000));
  std::sort(c.attribute_pool.begin(), c.attribute_pool.end());
  c.attribute_pool.erase(std::unique(c.attribute_pool.begin(), c.attribute_pool.end()), c.attribute_pool.end());
  std::uint64_t n = c.attribute_pool.size();
  for (int u = 0; u < nusers; ++u) {
    UserRecord r{"user" + std::to_string(u), {}};
    while (static_cast<int>(r.attributes.size()) < std::min<int>(per_user, n))
      r.attributes.insert(c.attribute_pool[rng.uniform(n)]);
    c.users.push_back(r);
  }
  c.policy.required_attributes.insert(c.attribute_pool[rng.uniform(n)]);
  for (const auto& u : c.users)
    if (rng.uniform(2)) c.policy.revoked_users.insert(u.user_id);
  return c;
}

std::string violation_path(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const SchemaViolation& e) {
    return e.path();
  }
  return "<none>";
}

TEST(Formats, ConfigRoundTripProperty) {
  Rng rng = Rng::from_u64(1);
  for (int i = 0; i < 50; ++i) {
    auto c = random_config(rng, 1 + rng.uniform(50), rng.uniform(8), 1 + rng.uniform(5));
    std::string text = save_config(c);
    ConfigFile back = load_config(text);
    EXPECT_EQ(back, c);
    EXPECT_EQ(save_config(back), text);
    EXPECT_EQ(text.find(' '), std::string::npos);
  }
}

TEST(Formats, ConfigWithOneUserFromFiftyPool) {
  Rng rng = Rng::from_u64(2);
  ConfigFile c;
  c.curve = default_curve()->params();
  for (int i = 0; i < 50; ++i) c.attribute_pool.push_back("a" + std::to_string(i));
  c.users.push_back({"alice", {"a1", "a7", "a30"}});
  c.policy = {{"a1"}, {}};
  auto back = load_config(save_config(c));
  EXPECT_EQ(back.users.size(), 1u);
  EXPECT_EQ(back.users[0].attributes.size(), 3u);
}

TEST(Formats, ConfigReportsJsonPointers) {
  ConfigFile c;
  c.curve = default_curve()->params();
  c.attribute_pool = {"a", "b"};
  c.users = {{"u1", {"a"}}, {"u2", {"b"}}};
  c.policy = {{"a"}, {}};
  auto j = parse(save_config(c));

  auto bad = j;
  bad["policy"]["attributes"] = {"a", "zzz"};
  EXPECT_EQ(violation_path([&] { load_config(bad.dump()); }), "/policy/attributes/1");
  bad = j;
  bad["users"][1]["attributes"][0] = "nope";
  EXPECT_EQ(violation_path([&] { load_config(bad.dump()); }), "/users/1/attributes/0");
  bad = j;
  bad["users"][1].erase("id");
  EXPECT_EQ(violation_path([&] { load_config(bad.dump()); }), "/users/1/id");
  bad = j;
  bad["curve"]["p"] = 17;
  EXPECT_EQ(violation_path([&] { load_config(bad.dump()); }), "/curve/p");
  bad = j;
  bad["policy"]["revoked"] = {"ghost"};
  EXPECT_EQ(violation_path([&] { load_config(bad.dump()); }), "/policy/revoked/0");
  bad = j;
  bad["extra"] = 1;
  EXPECT_EQ(violation_path([&] { load_config(bad.dump()); }), "/extra");
  EXPECT_EQ(violation_path([&] { load_config("{not json"); }), "");
}

TEST(Formats, CurveDescriptionRejectsInconsistentParams) {
  auto p = default_curve()->params();
  p.p += 4;
  EXPECT_EQ(violation_path([&] { build_curve(p); }), "/curve");
}

class KeysTest : public ::testing::Test {
 protected:
  void SetUp() override {
    curve_ = default_curve();
    Rng rng = Rng::from_u64(3);
    users_ = {{"one", {"a"}}, {"three", {"a", "b", "c"}}};
    std::tie(keys_.mpk, msk_) = setup(curve_, {{"a", "b", "c", "d"}}, users_, rng);
    keys_.msk = msk_;
    for (const auto& u : users_) keys_.user_keys.push_back(keygen(msk_, u));
  }
  CurvePtr curve_;
  std::vector<UserRecord> users_;
  KeysFile keys_;
  MasterSecretKey msk_;
};

TEST_F(KeysTest, RoundTripAndElementCounts) {
  std::string text = save_keys(keys_);
  KeysFile back = load_keys(text);
  EXPECT_EQ(save_keys(back), text);
  EXPECT_EQ(back.user_keys[0].elements.size(), 3u);
  EXPECT_EQ(back.user_keys[1].elements.size(), 5u);
  EXPECT_EQ(back.mpk.public_elements(), keys_.mpk.public_elements());
  ASSERT_TRUE(back.msk.has_value());
  EXPECT_EQ(back.msk->alpha, msk_.alpha);
  // The reloaded keys still work together.
  Rng rng = Rng::from_u64(4);
  auto [key, hdr] = encapsulate(back.mpk, {{"a"}, {"one"}}, rng);
  EXPECT_EQ(decapsulate(back.mpk, back.user_keys[1], hdr), key);
}

TEST_F(KeysTest, SetupOnlyFileIsValid) {
  KeysFile k = keys_;
  k.user_keys.clear();
  EXPECT_TRUE(load_keys(save_keys(k)).user_keys.empty());
}

TEST_F(KeysTest, SplitMasterSecret) {
  KeysFile pub = keys_;
  pub.msk.reset();
  std::string text = save_keys(pub);
  EXPECT_EQ(text.find("\"msk\""), std::string::npos);
  KeysFile back = load_keys(text);
  MasterSecretKey msk = load_msk(save_msk(msk_), back.mpk);
  EXPECT_EQ(msk.gamma, msk_.gamma);
  EXPECT_EQ(keygen(msk, users_[0]).elements[0], keys_.user_keys[0].elements[0]);
}

TEST_F(KeysTest, CorruptedPointNamesElementIndex) {
  auto j = parse(save_keys(keys_));
  std::string e = j["user_keys"][1]["elements"][3];
  e[10] = e[10] == '0' ? '1' : '0';
  j["user_keys"][1]["elements"][3] = e;
  EXPECT_EQ(violation_path([&] { load_keys(j.dump()); }), "/user_keys/1/elements/3");
}

TEST_F(KeysTest, KeysMatchConfig) {
  ConfigFile c;
  c.curve = curve_->params();
  c.attribute_pool = {"a", "b", "c", "d"};
  c.users = users_;
  c.policy = {{"a"}, {}};
  EXPECT_NO_THROW(check_keys_match_config(keys_, c));
  c.users.push_back({"extra", {"a"}});
  EXPECT_EQ(violation_path([&] { check_keys_match_config(keys_, c); }), "/users/2");
}

TEST_F(KeysTest, HeaderRoundTripWithoutKeys) {
  Rng rng = Rng::from_u64(5);
  for (std::size_t k = 0; k <= 2; ++k) {
    AccessPolicy pol{{"a"}, {}};
    for (std::size_t i = 0; i < k; ++i) pol.revoked_users.insert(users_[i].user_id);
    auto [key, hdr] = encapsulate(keys_.mpk, pol, rng);
    HeaderFile hf = header_file_from(hdr);
    std::string text = save_header(hf);
    HeaderFile back = load_header(text);  // no curve or key needed
    EXPECT_EQ(back, hf);
    EXPECT_EQ(back.elements.size(), k + 3);
    EXPECT_EQ(save_header(back), text);
    auto decoded = to_abbe_header(back, *curve_);
    if (k < 2) EXPECT_EQ(decapsulate(keys_.mpk, keys_.user_keys[1], decoded), key);
  }
}

TEST_F(KeysTest, HeaderCountMismatchRejected) {
  Rng rng = Rng::from_u64(6);
  auto [key, hdr] = encapsulate(keys_.mpk, {{"a"}, {"one"}}, rng);
  auto j = parse(save_header(header_file_from(hdr)));
  j["elements"].erase(j["elements"].size() - 1);
  EXPECT_EQ(violation_path([&] { load_header(j.dump()); }), "/elements");
  j = parse(save_header(header_file_from(hdr)));
  j["kdf"] = "other";
  EXPECT_EQ(violation_path([&] { load_header(j.dump()); }), "/kdf");
}

}  // namespace
}  // namespace abbe::formats
