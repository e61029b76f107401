// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Extension tower for BN pairings:
//   Fp2  = Fp[i]  / (i^2 + 1)          (requires p = 3 mod 4)
//   Fp6  = Fp2[v] / (v^3 - xi)         xi = c + i, a sextic non-residue
//   Fp12 = Fp6[w] / (w^2 - v)
// so that w^6 = xi. The non-residue and Frobenius constants live in the base
// ModulusContext.

#pragma once

#include "abbe/field.hpp"

namespace abbe {

struct Fp2 {
  Fp c0, c1;

  static Fp2 zero(const ModulusContext* ctx) { return {Fp::zero(ctx), Fp::zero(ctx)}; }
  static Fp2 one(const ModulusContext* ctx) { return {Fp::one(ctx), Fp::zero(ctx)}; }
  static Fp2 from_raw(const ModulusContext* ctx, const std::array<Limbs, 2>& raw) {
    return {Fp::from_montgomery(ctx, raw[0]), Fp::from_montgomery(ctx, raw[1])};
  }
  static Fp2 xi(const ModulusContext* ctx) {
    return {Fp::from_montgomery(ctx, ctx->xi_c0), Fp::one(ctx)};
  }

  const ModulusContext* ctx() const { return c0.ctx(); }
  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }
  bool is_one() const { return c0.is_one() && c1.is_zero(); }

  Fp2 operator+(const Fp2& o) const { return {c0 + o.c0, c1 + o.c1}; }
  Fp2 operator-(const Fp2& o) const { return {c0 - o.c0, c1 - o.c1}; }
  Fp2 operator-() const { return {-c0, -c1}; }
  Fp2 operator*(const Fp2& o) const {
    Fp a = c0 * o.c0;
    Fp b = c1 * o.c1;
    Fp m = (c0 + c1) * (o.c0 + o.c1);
    return {a - b, m - a - b};
  }
  Fp2 operator*(const Fp& s) const { return {c0 * s, c1 * s}; }
  Fp2& operator+=(const Fp2& o) { return *this = *this + o; }
  Fp2& operator-=(const Fp2& o) { return *this = *this - o; }
  Fp2& operator*=(const Fp2& o) { return *this = *this * o; }
  Fp2 square() const {
    Fp a = (c0 + c1) * (c0 - c1);
    Fp b = c0 * c1;
    return {a, b.dbl()};
  }
  Fp2 dbl() const { return {c0.dbl(), c1.dbl()}; }
  Fp2 conj() const { return {c0, -c1}; }
  Fp2 mul_by_xi() const {
    // (c0 + c1 i)(x + i) = (x c0 - c1) + (x c1 + c0) i
    Fp x = Fp::from_montgomery(ctx(), ctx()->xi_c0);
    return {x * c0 - c1, x * c1 + c0};
  }
  Fp2 inverse() const {
    Fp n = (c0.square() + c1.square()).inverse();
    return {c0 * n, -(c1 * n)};
  }
  Fp2 pow(const mpz_class& e) const;
  /// Square root (p = 3 mod 4); returns false for non-residues.
  bool sqrt(Fp2& out) const;
  bool is_square() const;
  /// Sign used by point compression: parity of c0, or of c1 when c0 = 0.
  bool sign() const { return c0.is_zero() ? c1.is_odd() : c0.is_odd(); }

  bool operator==(const Fp2& o) const { return c0 == o.c0 && c1 == o.c1; }
  bool operator!=(const Fp2& o) const { return !(*this == o); }
};

struct Fp6 {
  Fp2 c0, c1, c2;

  static Fp6 zero(const ModulusContext* ctx) { return {Fp2::zero(ctx), Fp2::zero(ctx), Fp2::zero(ctx)}; }
  static Fp6 one(const ModulusContext* ctx) { return {Fp2::one(ctx), Fp2::zero(ctx), Fp2::zero(ctx)}; }

  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }
  Fp6 operator+(const Fp6& o) const { return {c0 + o.c0, c1 + o.c1, c2 + o.c2}; }
  Fp6 operator-(const Fp6& o) const { return {c0 - o.c0, c1 - o.c1, c2 - o.c2}; }
  Fp6 operator-() const { return {-c0, -c1, -c2}; }
  Fp6 operator*(const Fp6& o) const;
  Fp6 square() const { return *this * *this; }
  Fp6 mul_by_v() const { return {c2.mul_by_xi(), c0, c1}; }
  Fp6 inverse() const;
  bool operator==(const Fp6& o) const { return c0 == o.c0 && c1 == o.c1 && c2 == o.c2; }
};

struct Fp12 {
  Fp6 c0, c1;

  static Fp12 one(const ModulusContext* ctx) { return {Fp6::one(ctx), Fp6::zero(ctx)}; }
  static Fp12 zero(const ModulusContext* ctx) { return {Fp6::zero(ctx), Fp6::zero(ctx)}; }

  /// Coefficient of w^k, k in [0, 6).
  Fp2& coeff(int k);
  const Fp2& coeff(int k) const;

  const ModulusContext* ctx() const { return c0.c0.ctx(); }
  bool is_one() const;
  bool is_zero() const { return c0.is_zero() && c1.is_zero(); }

  Fp12 operator*(const Fp12& o) const;
  Fp12& operator*=(const Fp12& o) { return *this = *this * o; }
  Fp12 square() const;
  Fp12 conj() const { return {c0, -c1}; }
  Fp12 inverse() const;
  Fp12 frobenius() const;    // x -> x^p
  Fp12 frobenius2() const;   // x -> x^(p^2)
  Fp12 pow(const mpz_class& e) const;
  Fp12 pow_u64(std::uint64_t e) const;

  // Faster forms for elements of the cyclotomic subgroup (norm 1 over
  // Fp6 and over Fp4), such as pairing values after the easy part of the
  // final exponentiation. Results are wrong for other elements.
  Fp12 cyclotomic_square() const;
  Fp12 cyclotomic_pow(const mpz_class& e) const;
  Fp12 cyclotomic_pow_u64(std::uint64_t e) const;

  bool operator==(const Fp12& o) const { return c0 == o.c0 && c1 == o.c1; }
  bool operator!=(const Fp12& o) const { return !(*this == o); }
};

/// Finds xi = c + i (smallest c >= 1) that is neither a square nor a cube in
/// Fp2 and stores it together with the Frobenius constants in ctx.
void install_tower_constants(ModulusContext& ctx);

}  // namespace abbe
