// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Prime-field arithmetic in Montgomery form over a runtime modulus of at most
// 256 bits. Arithmetic is variable-time.

#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "abbe/detail/mont.hpp"

namespace abbe {

Limbs limbs_from_mpz(const mpz_class& v);
mpz_class mpz_from_limbs(const Limbs& v);
mpz_class mpz_from_bytes(std::span<const std::uint8_t> be);
std::vector<std::uint8_t> mpz_to_bytes(const mpz_class& v, std::size_t width);
std::string mpz_to_hex(const mpz_class& v);   // "0x..." lowercase
mpz_class mpz_from_hex(const std::string& s); // accepts optional 0x prefix

/// Constants for arithmetic modulo an odd modulus m < 2^256.
///
/// The tower fields built on top of a base prime also stash their constants
/// here (non-residue and Frobenius coefficients) so that elements only need a
/// single context pointer.
struct ModulusContext {
  explicit ModulusContext(const mpz_class& modulus);

  mpz_class modulus;
  Limbs m{};
  std::uint64_t n0inv = 0;  // -m^-1 mod 2^64
  Limbs r2{};               // R^2 mod m
  Limbs one{};              // R mod m
  std::size_t bits = 0;
  std::size_t bytes = 32;

  // Exponents used by inversion and square roots.
  mpz_class m_minus_2;
  mpz_class m_plus_1_div_4;
  mpz_class m_minus_1_div_2;

  // Tower constants, filled in by the curve builder for base-field contexts.
  // xi = xi_c0 + i is the sextic non-residue; frob[k] = xi^(k(p-1)/6).
  Limbs xi_c0{};
  std::array<std::array<Limbs, 2>, 6> frob{};
  std::array<std::array<Limbs, 2>, 6> frob2{};  // frob of frob: xi^(k(p^2-1)/6)
};

/// Element of Z/mZ stored in Montgomery form.
class Fp {
 public:
  Fp() = default;
  explicit Fp(const ModulusContext* ctx) : ctx_(ctx), v_{} {}
  Fp(const ModulusContext* ctx, std::uint64_t small);
  Fp(const ModulusContext* ctx, const mpz_class& value);

  static Fp from_montgomery(const ModulusContext* ctx, const Limbs& raw) {
    Fp r(ctx);
    r.v_ = raw;
    return r;
  }
  static Fp one(const ModulusContext* ctx) { return from_montgomery(ctx, ctx->one); }
  static Fp zero(const ModulusContext* ctx) { return Fp(ctx); }
  /// Interprets big-endian bytes; throws DecodeError unless value < modulus.
  static Fp from_bytes(const ModulusContext* ctx, std::span<const std::uint8_t> be);

  const ModulusContext* ctx() const { return ctx_; }
  const Limbs& raw() const { return v_; }

  bool is_zero() const { return (v_[0] | v_[1] | v_[2] | v_[3]) == 0; }
  bool is_one() const { return v_ == ctx_->one; }
  bool is_odd() const;  // parity of the canonical value

  Fp operator+(const Fp& o) const { return from_montgomery(ctx_, detail::add_mod(v_, o.v_, ctx_->m)); }
  Fp operator-(const Fp& o) const { return from_montgomery(ctx_, detail::sub_mod(v_, o.v_, ctx_->m)); }
  Fp operator-() const { return from_montgomery(ctx_, detail::sub_mod(Limbs{}, v_, ctx_->m)); }
  Fp operator*(const Fp& o) const { return from_montgomery(ctx_, detail::mont_mul(v_, o.v_, ctx_->m, ctx_->n0inv)); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp square() const { return *this * *this; }
  Fp dbl() const { return *this + *this; }
  Fp pow(const mpz_class& e) const;
  Fp inverse() const;  // inverse of zero is zero
  /// Square root for moduli = 3 mod 4. Returns false if not a residue.
  bool sqrt(Fp& out) const;
  bool is_square() const;

  bool operator==(const Fp& o) const { return v_ == o.v_; }
  bool operator!=(const Fp& o) const { return v_ != o.v_; }

  mpz_class to_mpz() const;
  Limbs canonical() const;
  std::vector<std::uint8_t> to_bytes() const;  // ctx->bytes, big-endian

 private:
  const ModulusContext* ctx_ = nullptr;
  Limbs v_{};
};

}  // namespace abbe
