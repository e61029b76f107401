// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "abbe/abbe.hpp"
#include "abbe/errors.hpp"
#include "abbe/hash.hpp"

namespace abbe {
namespace {

AttributeUniverse make_universe(int n) {
  AttributeUniverse u;
  for (int i = 0; i < n; ++i) u.attributes.push_back("attr" + std::to_string(i));
  return u;
}

struct Fixture {
  CurvePtr curve = default_curve();
  AttributeUniverse universe;
  std::vector<UserRecord> users;
  MasterPublicKey mpk;
  MasterSecretKey msk;
  std::vector<UserPrivateKey> keys;

  Fixture(AttributeUniverse u, std::vector<UserRecord> r, std::uint64_t seed) : universe(std::move(u)), users(std::move(r)) {
    Rng rng = Rng::from_u64(seed);
    std::tie(mpk, msk) = setup(curve, universe, users, rng);
    for (const auto& user : users) keys.push_back(keygen(msk, user));
  }
};

Fixture small_fixture() {
  return Fixture(AttributeUniverse{{"a", "b", "c", "d"}},
                 {{"alice", {"a", "b", "c"}}, {"bob", {"a"}}, {"carol", {"b", "d"}}, {"dave", {"a", "b"}}}, 1);
}

TEST(PolicyOracle, Examples) {
  EXPECT_TRUE(policy_satisfies({{"a", "b"}, {}}, {"u", {"a", "b", "c"}}));
  EXPECT_FALSE(policy_satisfies({{"a", "b"}, {}}, {"u", {"a"}}));
  EXPECT_FALSE(policy_satisfies({{"a"}, {"u"}}, {"u", {"a"}}));
}

TEST(Kem, KeySizes) {
  auto f = small_fixture();
  EXPECT_EQ(f.keys[0].elements.size(), 5u);
  EXPECT_EQ(f.keys[1].elements.size(), 3u);
  EXPECT_EQ(f.keys[2].elements.size(), 4u);
}

TEST(Kem, KeygenCountsGroupMultiplications) {
  auto f = small_fixture();
  for (const auto& u : f.users) {
    instrumentation::reset();
    keygen(f.msk, u);
    EXPECT_EQ(instrumentation::group_multiplications(), 2 + u.attributes.size());
  }
}

TEST(Kem, HeaderSizes) {
  auto f = small_fixture();
  Rng rng = Rng::from_u64(2);
  EXPECT_EQ(encapsulate(f.mpk, {{"a", "b"}, {}}, rng).second.elements.size(), 3u);
  EXPECT_EQ(encapsulate(f.mpk, {{"a"}, {"bob", "dave"}}, rng).second.elements.size(), 5u);
}

TEST(Kem, RoundTripAndExactlyThreePairings) {
  auto f = small_fixture();
  Rng rng = Rng::from_u64(3);
  AccessPolicy pol{{"a", "b"}, {"dave"}};
  auto [key, hdr] = encapsulate(f.mpk, pol, rng);
  instrumentation::reset();
  auto got = decapsulate(f.mpk, f.keys[0], hdr);
  ASSERT_TRUE(got.has_value());
  EXPECT_EQ(*got, key);
  EXPECT_EQ(instrumentation::pairings(), 3u);
  EXPECT_FALSE(decapsulate(f.mpk, f.keys[1], hdr).has_value());  // missing b
  EXPECT_FALSE(decapsulate(f.mpk, f.keys[3], hdr).has_value());  // revoked
}

TEST(Kem, NoRevocationRoundTrip) {
  auto f = small_fixture();
  Rng rng = Rng::from_u64(4);
  auto [key, hdr] = encapsulate(f.mpk, {{"b"}, {}}, rng);
  instrumentation::reset();
  EXPECT_EQ(decapsulate(f.mpk, f.keys[2], hdr), key);
  EXPECT_EQ(instrumentation::pairings(), 3u);
}

TEST(Kem, DistinctRandomnessGivesDistinctKeys) {
  auto f = small_fixture();
  Rng r1 = Rng::from_u64(5), r2 = Rng::from_u64(6);
  auto [k1, h1] = encapsulate(f.mpk, {{"a"}, {}}, r1);
  auto [k2, h2] = encapsulate(f.mpk, {{"a"}, {}}, r2);
  EXPECT_NE(k1, k2);
  EXPECT_EQ(decapsulate(f.mpk, f.keys[0], h1), k1);
  EXPECT_EQ(decapsulate(f.mpk, f.keys[0], h2), k2);
}

TEST(Kem, TamperedKeyDoesNotDecapsulate) {
  // Claiming an attribute without the matching element must not help.
  auto f = small_fixture();
  Rng rng = Rng::from_u64(7);
  auto [key, hdr] = encapsulate(f.mpk, {{"a", "d"}, {}}, rng);
  UserPrivateKey forged = f.keys[1];  // bob has only "a"
  forged.attributes.insert("d");
  forged.elements.push_back(f.keys[2].elements[3]);  // carol's D_d
  auto got = decapsulate(f.mpk, forged, hdr);
  ASSERT_TRUE(got.has_value());
  EXPECT_NE(*got, key);
}

TEST(Kem, SetupIsDeterministic) {
  auto a = small_fixture();
  auto b = small_fixture();
  ASSERT_EQ(a.mpk.public_elements(), b.mpk.public_elements());
  for (std::size_t i = 0; i < a.keys.size(); ++i)
    for (std::size_t j = 0; j < a.keys[i].elements.size(); ++j)
      EXPECT_EQ(a.keys[i].elements[j], b.keys[i].elements[j]);
}

TEST(Kem, MinimalInstance) {
  Fixture f(AttributeUniverse{{"only"}}, {{"solo", {"only"}}}, 8);
  Rng rng = Rng::from_u64(9);
  auto [key, hdr] = encapsulate(f.mpk, {{"only"}, {}}, rng);
  EXPECT_EQ(decapsulate(f.mpk, f.keys[0], hdr), key);
  auto [key2, hdr2] = encapsulate(f.mpk, {{"only"}, {"solo"}}, rng);
  EXPECT_EQ(hdr2.elements.size(), 4u);
  EXPECT_FALSE(decapsulate(f.mpk, f.keys[0], hdr2).has_value());
}

TEST(Kem, Errors) {
  auto curve = default_curve();
  Rng rng = Rng::from_u64(10);
  auto code = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIo;
  };
  AttributeUniverse uni{{"a", "b"}};
  EXPECT_EQ(code([&] { setup(curve, uni, {{"u", {"a"}}, {"u", {"b"}}}, rng); }), ErrorCode::kDuplicateUser);
  EXPECT_EQ(code([&] { setup(curve, uni, {{"u", {"z"}}}, rng); }), ErrorCode::kUnknownAttribute);
  auto [mpk, msk] = setup(curve, uni, {{"u", {"a"}}}, rng);
  EXPECT_EQ(code([&] { keygen(msk, {"nobody", {"a"}}); }), ErrorCode::kUnknownUser);
  EXPECT_EQ(code([&] { encapsulate(mpk, {{"z"}, {}}, rng); }), ErrorCode::kUnknownAttribute);
  EXPECT_EQ(code([&] { encapsulate(mpk, {{"a"}, {"ghost"}}, rng); }), ErrorCode::kUnknownRevokedUser);
}

TEST(Kem, MismatchedCurve) {
  auto f = small_fixture();
  auto other = generate_curve(128, as_bytes("other"));
  Rng rng = Rng::from_u64(11);
  auto [mpk2, msk2] = setup(other, f.universe, f.users, rng);
  auto [key, hdr] = encapsulate(mpk2, {{"a"}, {}}, rng);
  try {
    decapsulate(f.mpk, f.keys[0], hdr);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMismatchedCurve);
  }
}

// Randomized agreement with the set oracle on small instances; the full
// 200-instance sweep lives in the acceptance binary.
TEST(Kem, AgreesWithOracleOnRandomInstances) {
  Rng rng = Rng::from_u64(12);
  auto curve = default_curve();
  for (int inst = 0; inst < 6; ++inst) {
    int pool = 2 + static_cast<int>(rng.uniform(10));
    auto uni = make_universe(pool);
    int nusers = 1 + static_cast<int>(rng.uniform(6));
    std::vector<UserRecord> reg;
    for (int i = 0; i < nusers; ++i) {
      UserRecord u{"user" + std::to_string(i), {}};
      int na = 1 + static_cast<int>(rng.uniform(pool));
      while (static_cast<int>(u.attributes.size()) < na) u.attributes.insert(uni.attributes[rng.uniform(pool)]);
      reg.push_back(u);
    }
    auto [mpk, msk] = setup(curve, uni, reg, rng);
    AccessPolicy pol;
    int np = 1 + static_cast<int>(rng.uniform(3));
    while (static_cast<int>(pol.required_attributes.size()) < np)
      pol.required_attributes.insert(uni.attributes[rng.uniform(pool)]);
    for (const auto& u : reg)
      if (rng.uniform(3) == 0) pol.revoked_users.insert(u.user_id);
    auto [key, hdr] = encapsulate(mpk, pol, rng);
    for (const auto& u : reg) {
      auto got = decapsulate(mpk, keygen(msk, u), hdr);
      EXPECT_EQ(got.has_value() && *got == key, policy_satisfies(pol, u));
    }
  }
}

}  // namespace
}  // namespace abbe
