// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "abbe/curve.hpp"
#include "abbe/errors.hpp"
#include "abbe/hash.hpp"

namespace abbe {
namespace {

class PairingTest : public ::testing::Test {
 protected:
  void SetUp() override { c_ = default_curve(); }
  const Curve& c() const { return *c_; }
  CurvePtr c_;
};

TEST_F(PairingTest, DefaultCurveShape) {
  const auto& P = c().params();
  EXPECT_EQ(P.u, kDefaultCurveU);
  EXPECT_EQ(mpz_sizeinbase(P.r.get_mpz_t(), 2), 256u);
  EXPECT_EQ(mpz_sizeinbase(P.p.get_mpz_t(), 2), 256u);
  EXPECT_EQ(mpz_class(P.p % 4), 3);
  mpz_class u = P.u;
  EXPECT_EQ(P.p, 36 * u * u * u * u + 36 * u * u * u + 24 * u * u + 6 * u + 1);
  EXPECT_EQ(P.r, 36 * u * u * u * u + 36 * u * u * u + 18 * u * u + 6 * u + 1);
}

TEST_F(PairingTest, GeneratorsHaveOrderR) {
  EXPECT_FALSE(c().g1().is_identity());
  EXPECT_FALSE(c().g2().is_identity());
  EXPECT_TRUE(c().g1().mul_raw(c().params().r).is_identity());
  EXPECT_TRUE(c().g2().mul_raw(c().params().r).is_identity());
  EXPECT_FALSE(c().gt_generator().is_identity());
  EXPECT_TRUE(c().gt_generator().pow_raw(c().params().r).is_identity());
}

TEST_F(PairingTest, FastFinalExponentiationMatchesNaive) {
  Rng rng = Rng::from_u64(7);
  for (int i = 0; i < 3; ++i) {
    G1 a = c().g1() * Scalar::random_nonzero(c(), rng);
    G2 b = c().g2() * Scalar::random_nonzero(c(), rng);
    Fp12 f = miller_loop(a, b);
    EXPECT_EQ(final_exponentiation(c(), f), final_exponentiation_naive(c(), f));
  }
}

TEST_F(PairingTest, Bilinearity) {
  Rng rng = Rng::from_u64(8);
  GT base = c().gt_generator();
  for (int i = 0; i < 40; ++i) {
    Scalar a = Scalar::random(c(), rng), b = Scalar::random(c(), rng);
    GT lhs = pair(c().g1() * a, c().g2() * b);
    EXPECT_EQ(lhs, base.pow(a * b));
  }
}

TEST_F(PairingTest, FixedBaseTablesMatchWindowedMultiply) {
  Rng rng = Rng::from_u64(9);
  std::vector<Scalar> ks = {Scalar::zero(c()), Scalar::one(c()), Scalar(c(), 31), Scalar(c(), 32),
                            Scalar(c(), c().params().r - 1)};
  for (int i = 0; i < 30; ++i) ks.push_back(Scalar::random(c(), rng));
  // The first pass crosses the point where the GT table is built; the second
  // runs every scalar through both tables.
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& k : ks) {
      EXPECT_EQ(c().g2_mul(k), c().g2() * k);
      EXPECT_EQ(c().gt_pow(k), c().gt_generator().pow(k));
    }
  }
}

TEST_F(PairingTest, LinearInEachArgument) {
  Rng rng = Rng::from_u64(9);
  G1 p1 = c().g1() * Scalar::random(c(), rng), p2 = c().g1() * Scalar::random(c(), rng);
  G2 q1 = c().g2() * Scalar::random(c(), rng), q2 = c().g2() * Scalar::random(c(), rng);
  EXPECT_EQ(pair(p1 + p2, q1), pair(p1, q1) * pair(p2, q1));
  EXPECT_EQ(pair(p1, q1 + q2), pair(p1, q1) * pair(p1, q2));
  EXPECT_EQ(pair(-p1, q1), pair(p1, q1).inverse());
}

TEST_F(PairingTest, IdentityPairsToOne) {
  EXPECT_TRUE(pair(G1::identity(c()), c().g2()).is_identity());
  EXPECT_TRUE(pair(c().g1(), G2::identity(c())).is_identity());
}

TEST_F(PairingTest, EncodingRoundTrips) {
  Rng rng = Rng::from_u64(10);
  for (int i = 0; i < 20; ++i) {
    Scalar k = Scalar::random(c(), rng);
    G1 a = c().g1() * k;
    G2 b = c().g2() * k;
    GT t = c().gt_generator().pow(k);
    EXPECT_EQ(a.encode().size(), kG1Bytes);
    EXPECT_EQ(b.encode().size(), kG2Bytes);
    EXPECT_EQ(t.encode().size(), kGtBytes);
    EXPECT_EQ(G1::decode(c(), a.encode()), a);
    EXPECT_EQ(G2::decode(c(), b.encode()), b);
    EXPECT_EQ(GT::decode(c(), t.encode()), t);
    EXPECT_EQ(Scalar::from_bytes(c(), k.to_bytes()), k);
  }
  EXPECT_EQ(G1::decode(c(), G1::identity(c()).encode()), G1::identity(c()));
  EXPECT_EQ(G2::decode(c(), G2::identity(c()).encode()), G2::identity(c()));
}

TEST_F(PairingTest, DecodeRejectsGarbage) {
  std::vector<std::uint8_t> g1(kG1Bytes, 0xff);
  EXPECT_THROW(G1::decode(c(), g1), Error);
  g1.assign(kG1Bytes, 0);
  g1[0] = 0x05;
  EXPECT_THROW(G1::decode(c(), g1), Error);
  EXPECT_THROW(G1::decode(c(), std::vector<std::uint8_t>(10, 0)), Error);
  // A non-unit Fp12 element is not in GT.
  auto gt = c().gt_generator().encode();
  gt[5] ^= 1;
  EXPECT_THROW(GT::decode(c(), gt), Error);
  auto s = mpz_to_bytes(c().params().r, 32);
  EXPECT_THROW(Scalar::from_bytes(c(), s), Error);
}

TEST_F(PairingTest, G2DecodeRejectsTwistPointsOutsideSubgroup) {
  // Find an x on the twist whose point has a cofactor component.
  const ModulusContext* F = c().fp();
  int rejected = 0;
  for (std::uint64_t xs = 1; xs < 40 && rejected == 0; ++xs) {
    Fp2 x{Fp(F, xs), Fp(F, 3)};
    Fp2 y;
    if (!(x.square() * x + c().b_twist()).sqrt(y)) continue;
    auto raw = detail::Jacobian<Fp2>::from_affine(x, y);
    if (raw.mul(c().params().r).is_infinity()) continue;
    std::vector<std::uint8_t> enc(kG2Bytes);
    enc[0] = y.sign() ? 0x03 : 0x02;
    auto b0 = x.c0.to_bytes(), b1 = x.c1.to_bytes();
    std::copy(b0.begin(), b0.end(), enc.begin() + 1);
    std::copy(b1.begin(), b1.end(), enc.begin() + 33);
    EXPECT_THROW(G2::decode(c(), enc), Error);
    ++rejected;
  }
  EXPECT_EQ(rejected, 1);
}

TEST_F(PairingTest, CounterIncrementsOncePerPairing) {
  instrumentation::reset();
  EXPECT_EQ(instrumentation::pairings(), 0u);
  pair(c().g1(), c().g2());
  EXPECT_EQ(instrumentation::pairings(), 1u);
  pair_uncounted(c().g1(), c().g2());
  EXPECT_EQ(instrumentation::pairings(), 1u);
  pair(*c_, GroupElement::of(c().g1()), GroupElement::of(c().g2()));
  EXPECT_EQ(instrumentation::pairings(), 2u);
  instrumentation::reset();
  EXPECT_EQ(instrumentation::pairings(), 0u);
}

TEST_F(PairingTest, GenericApiChecksGroups) {
  auto g1 = GroupElement::of(c().g1());
  auto g2 = GroupElement::of(c().g2());
  EXPECT_THROW(pair(*c_, g2, g1), Error);
  try {
    group_add(*c_, g1, g2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kWrongGroup);
  }
  auto two = group_add(*c_, g1, g1);
  EXPECT_EQ(two, scalar_mul(*c_, Scalar(c(), 2), g1));
  EXPECT_EQ(identity(*c_, Group::GT), GroupElement::of(GT::identity(c())));
}

TEST_F(PairingTest, UnsupportedSecurityLevel) {
  try {
    generate_curve(192, as_bytes("x"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnsupportedSecurityLevel);
  }
}

TEST_F(PairingTest, SeededCurveGenerationIsDeterministic) {
  auto a = generate_curve(128, as_bytes("another seed"));
  auto b = generate_curve(128, as_bytes("another seed"));
  EXPECT_EQ(a->params().u, b->params().u);
  EXPECT_GE(mpz_sizeinbase(a->params().r.get_mpz_t(), 2), 256u);
  EXPECT_TRUE(a->same_as(*b));
  auto round = Curve::from_params(a->params());
  EXPECT_TRUE(round->same_as(*a));
  Rng rng = Rng::from_u64(11);
  Scalar x = Scalar::random(*a, rng);
  EXPECT_EQ(pair(a->g1() * x, a->g2()), pair(a->g1(), a->g2() * x));
}

TEST_F(PairingTest, FromParamsRejectsTampering) {
  CurveParams p = c().params();
  p.r += 2;
  EXPECT_THROW(Curve::from_params(p), Error);
  p = c().params();
  p.security_bits = 80;
  EXPECT_THROW(Curve::from_params(p), Error);
}

}  // namespace
}  // namespace abbe
