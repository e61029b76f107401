// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Barreto-Naehrig curves at the 128-bit level: parameter generation, the
// groups G1, G2, GT, scalars modulo the group order, and the optimal ate
// pairing.
//
// NOTE: none of the arithmetic here is constant-time. It is meant for
// research and benchmarking, not for handling secrets on shared hardware.

#pragma once

#include <atomic>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "abbe/detail/jacobian.hpp"
#include "abbe/field.hpp"
#include "abbe/rng.hpp"
#include "abbe/tower.hpp"

namespace abbe {

enum class Group { G1, G2, GT };
const char* group_name(Group g);

enum class TwistType { D, M };

inline constexpr std::size_t kG1Bytes = 33;
inline constexpr std::size_t kG2Bytes = 65;
inline constexpr std::size_t kGtBytes = 384;
inline constexpr std::size_t kScalarBytes = 32;

/// Seed whose search yields the pinned default curve.
inline constexpr std::string_view kDefaultCurveSeed = "abbe-bn256-default";
/// BN parameter of the default curve (p and r are both 256-bit primes).
inline constexpr std::uint64_t kDefaultCurveU = 6518589491078791937ULL;

class Curve;
using CurvePtr = std::shared_ptr<const Curve>;

/// Integer modulo the group order r.
class Scalar {
 public:
  Scalar() = default;
  Scalar(const Curve& curve, const mpz_class& v);
  Scalar(const Curve& curve, std::uint64_t v);

  static Scalar zero(const Curve& curve);
  static Scalar one(const Curve& curve);
  /// Uniform on [0, r).
  static Scalar random(const Curve& curve, Rng& rng);
  /// Uniform on [1, r).
  static Scalar random_nonzero(const Curve& curve, Rng& rng);
  /// SHA-512 of (tag || data) reduced mod r.
  static Scalar hash(const Curve& curve, std::string_view tag, std::span<const std::uint8_t> data);
  static Scalar from_bytes(const Curve& curve, std::span<const std::uint8_t> be);

  Scalar operator+(const Scalar& o) const { return Scalar(v_ + o.v_); }
  Scalar operator-(const Scalar& o) const { return Scalar(v_ - o.v_); }
  Scalar operator-() const { return Scalar(-v_); }
  Scalar operator*(const Scalar& o) const { return Scalar(v_ * o.v_); }
  Scalar inverse() const { return Scalar(v_.inverse()); }
  bool is_zero() const { return v_.is_zero(); }
  bool operator==(const Scalar& o) const { return v_ == o.v_; }
  bool operator!=(const Scalar& o) const { return v_ != o.v_; }

  mpz_class to_mpz() const { return v_.to_mpz(); }
  std::vector<std::uint8_t> to_bytes() const { return v_.to_bytes(); }
  std::string to_hex() const;

 private:
  explicit Scalar(const Fp& v) : v_(v) {}
  Fp v_;
};

class G1 {
 public:
  G1() = default;
  static G1 identity(const Curve& curve);
  static G1 decode(const Curve& curve, std::span<const std::uint8_t> bytes);

  G1 operator+(const G1& o) const { return G1(curve_, p_.add(o.p_)); }
  G1 operator-(const G1& o) const { return G1(curve_, p_.add(o.p_.neg())); }
  G1 operator-() const { return G1(curve_, p_.neg()); }
  /// Scalar multiplication; counted by the instrumentation counters.
  G1 operator*(const Scalar& k) const;
  /// Multiplication by an arbitrary integer, not counted (used for order checks).
  G1 mul_raw(const mpz_class& k) const { return G1(curve_, p_.mul(k)); }
  bool is_identity() const { return p_.is_infinity(); }
  bool operator==(const G1& o) const { return p_.equals(o.p_); }
  bool operator!=(const G1& o) const { return !(*this == o); }

  std::vector<std::uint8_t> encode() const;
  const Curve* curve() const { return curve_; }
  const detail::Jacobian<Fp>& point() const { return p_; }

 private:
  friend class Curve;
  G1(const Curve* c, const detail::Jacobian<Fp>& p) : curve_(c), p_(p) {}
  const Curve* curve_ = nullptr;
  detail::Jacobian<Fp> p_;
};

class G2 {
 public:
  G2() = default;
  static G2 identity(const Curve& curve);
  static G2 decode(const Curve& curve, std::span<const std::uint8_t> bytes);

  G2 operator+(const G2& o) const { return G2(curve_, p_.add(o.p_)); }
  G2 operator-(const G2& o) const { return G2(curve_, p_.add(o.p_.neg())); }
  G2 operator-() const { return G2(curve_, p_.neg()); }
  G2 operator*(const Scalar& k) const;
  G2 mul_raw(const mpz_class& k) const { return G2(curve_, p_.mul(k)); }
  bool is_identity() const { return p_.is_infinity(); }
  bool operator==(const G2& o) const { return p_.equals(o.p_); }
  bool operator!=(const G2& o) const { return !(*this == o); }

  std::vector<std::uint8_t> encode() const;
  const Curve* curve() const { return curve_; }
  const detail::Jacobian<Fp2>& point() const { return p_; }

 private:
  friend class Curve;
  G2(const Curve* c, const detail::Jacobian<Fp2>& p) : curve_(c), p_(p) {}
  const Curve* curve_ = nullptr;
  detail::Jacobian<Fp2> p_;
};

/// Element of the order-r subgroup of Fp12^*, written multiplicatively.
class GT {
 public:
  GT() = default;
  static GT identity(const Curve& curve);
  static GT decode(const Curve& curve, std::span<const std::uint8_t> bytes);

  GT operator*(const GT& o) const { return GT(curve_, v_ * o.v_); }
  GT operator/(const GT& o) const { return GT(curve_, v_ * o.v_.conj()); }
  GT inverse() const { return GT(curve_, v_.conj()); }  // unitary elements
  GT pow(const Scalar& k) const;
  GT pow_raw(const mpz_class& k) const { return GT(curve_, v_.pow(k)); }
  bool is_identity() const { return v_.is_one(); }
  bool operator==(const GT& o) const { return v_ == o.v_; }
  bool operator!=(const GT& o) const { return !(*this == o); }

  std::vector<std::uint8_t> encode() const;
  const Curve* curve() const { return curve_; }
  const Fp12& value() const { return v_; }

 private:
  friend class Curve;
  friend GT pair(const G1&, const G2&);
  GT(const Curve* c, const Fp12& v) : curve_(c), v_(v) {}
  const Curve* curve_ = nullptr;
  Fp12 v_;
};

/// Public description of a BN curve.
struct CurveParams {
  std::string family = "BN";
  std::uint64_t u = 0;
  mpz_class p;
  mpz_class r;
  int security_bits = 128;
  std::vector<std::uint8_t> g1;  // canonical encodings
  std::vector<std::uint8_t> g2;
};

/// An instantiated BN curve. Immutable after construction; elements keep a
/// raw pointer to their curve, so the curve must outlive them.
class Curve : public std::enable_shared_from_this<Curve> {
 public:
  /// Builds the curve for BN parameter u > 0. Throws if p or r is not prime.
  static CurvePtr from_u(std::uint64_t u);
  /// Builds from a stored description and verifies every invariant: the BN
  /// polynomials, primality, and that both generators have order r.
  static CurvePtr from_params(const CurveParams& params);
  ~Curve();

  const CurveParams& params() const { return params_; }
  const ModulusContext* fp() const { return fp_.get(); }
  const ModulusContext* fr() const { return fr_.get(); }
  TwistType twist() const { return twist_; }
  std::uint64_t b() const { return b_; }
  const G1& g1() const { return g1_; }
  const G2& g2() const { return g2_; }
  /// pair(g1, g2), computed once at construction.
  const GT& gt_generator() const { return gt_gen_; }
  /// g2 * k and gt_generator ^ k through fixed-base tables. The G2 table is
  /// built on first use; the GT table after kGtTableAfter plain
  /// exponentiations.
  G2 g2_mul(const Scalar& k) const;
  GT gt_pow(const Scalar& k) const;
  /// Same p, r and generators.
  bool same_as(const Curve& o) const;

  // Implementation hooks for the pairing and encodings.
  const Fp& b1() const { return b1_; }
  const Fp2& b_twist() const { return b2_; }
  detail::Jacobian<Fp2> twist_frobenius(const detail::Jacobian<Fp2>& q) const;
  G1 make_g1(const detail::Jacobian<Fp>& p) const { return G1(this, p); }
  G2 make_g2(const detail::Jacobian<Fp2>& p) const { return G2(this, p); }
  GT make_gt(const Fp12& v) const { return GT(this, v); }

 private:
  Curve() = default;
  void init(std::uint64_t u);

  CurveParams params_;
  std::unique_ptr<ModulusContext> fp_;
  std::unique_ptr<ModulusContext> fr_;
  std::uint64_t b_ = 0;
  Fp b1_;
  Fp2 b2_;
  TwistType twist_ = TwistType::D;
  Fp2 frob_x_, frob_y_;  // untwist-Frobenius-twist coefficients
  G1 g1_;
  G2 g2_;
  GT gt_gen_;

  struct G2Table;
  struct GTTable;
  static constexpr std::uint32_t kGtTableAfter = 10;
  mutable std::atomic<std::uint32_t> gt_uses_{0};
  mutable std::once_flag g2_table_once_, gt_table_once_;
  mutable std::unique_ptr<G2Table> g2_table_;
  mutable std::unique_ptr<GTTable> gt_table_;
};

/// Searches for a BN curve at the requested security level. Only 128 is
/// supported. The search starts from a u derived from the seed and walks
/// upwards until p and r are prime, p < 2^256 and r >= 2^255. The default
/// seed starts at kDefaultCurveU.
CurvePtr generate_curve(int security_bits, std::span<const std::uint8_t> seed);
CurvePtr default_curve();

/// Optimal ate pairing. Counted by the instrumentation counters.
GT pair(const G1& a, const G2& b);
/// Product of pairings without instrumentation (used by self-checks).
GT pair_uncounted(const G1& a, const G2& b);
/// Final exponentiation via the plain exponent (p^12 - 1) / r; test oracle.
Fp12 final_exponentiation_naive(const Curve& curve, const Fp12& f);
Fp12 miller_loop(const G1& a, const G2& b);
Fp12 final_exponentiation(const Curve& curve, const Fp12& f);

/// Group-agnostic handle: a group tag plus canonical bytes.
struct GroupElement {
  Group group = Group::G1;
  std::vector<std::uint8_t> encoding;

  static GroupElement of(const G1& e) { return {Group::G1, e.encode()}; }
  static GroupElement of(const G2& e) { return {Group::G2, e.encode()}; }
  static GroupElement of(const GT& e) { return {Group::GT, e.encode()}; }
  bool operator==(const GroupElement&) const = default;
};

GroupElement pair(const Curve& curve, const GroupElement& a, const GroupElement& b);
GroupElement scalar_mul(const Curve& curve, const Scalar& x, const GroupElement& e);
GroupElement group_add(const Curve& curve, const GroupElement& a, const GroupElement& b);
GroupElement identity(const Curve& curve, Group g);
/// Decodes and re-checks group membership; throws DecodeError.
void validate(const Curve& curve, const GroupElement& e);

namespace instrumentation {
std::uint64_t pairings();
std::uint64_t group_multiplications();  // G1 + G2 scalar multiplications
std::uint64_t gt_exponentiations();
void reset();
}  // namespace instrumentation

}  // namespace abbe
