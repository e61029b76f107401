// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Jacobian-coordinate arithmetic on short Weierstrass curves y^2 = x^3 + b,
// generic over the coordinate field (Fp for G1, Fp2 for the G2 twist).

#pragma once

#include <array>

#include <gmpxx.h>

namespace abbe::detail {

template <class F>
struct Jacobian {
  F x, y, z;  // z == 0 encodes the point at infinity

  static Jacobian infinity(const F& one) { return {one, one, one - one}; }
  static Jacobian from_affine(const F& ax, const F& ay) { return {ax, ay, F::one(ax.ctx())}; }

  bool is_infinity() const { return z.is_zero(); }

  Jacobian dbl() const {
    if (is_infinity()) return *this;
    F a = x.square();
    F b = y.square();
    F c = b.square();
    F d = ((x + b).square() - a - c).dbl();
    F e = a.dbl() + a;
    F f = e.square();
    F x3 = f - d.dbl();
    F c8 = c.dbl().dbl().dbl();
    F y3 = e * (d - x3) - c8;
    F z3 = (y * z).dbl();
    return {x3, y3, z3};
  }

  Jacobian add(const Jacobian& o) const {
    if (is_infinity()) return o;
    if (o.is_infinity()) return *this;
    F z1z1 = z.square();
    F z2z2 = o.z.square();
    F u1 = x * z2z2;
    F u2 = o.x * z1z1;
    F s1 = y * o.z * z2z2;
    F s2 = o.y * z * z1z1;
    F h = u2 - u1;
    F r = (s2 - s1).dbl();
    if (h.is_zero()) {
      if (r.is_zero()) return dbl();
      return infinity(F::one(x.ctx()));
    }
    F i = h.dbl().square();
    F j = h * i;
    F v = u1 * i;
    F x3 = r.square() - j - v.dbl();
    F y3 = r * (v - x3) - (s1 * j).dbl();
    F z3 = ((z + o.z).square() - z1z1 - z2z2) * h;
    return {x3, y3, z3};
  }

  Jacobian neg() const { return {x, -y, z}; }

  /// Affine coordinates; undefined for infinity.
  void to_affine(F& ax, F& ay) const {
    F zi = z.inverse();
    F zi2 = zi.square();
    ax = x * zi2;
    ay = y * zi2 * zi;
  }

  bool equals(const Jacobian& o) const {
    if (is_infinity() || o.is_infinity()) return is_infinity() && o.is_infinity();
    F z1z1 = z.square();
    F z2z2 = o.z.square();
    if (x * z2z2 != o.x * z1z1) return false;
    return y * o.z * z2z2 == o.y * z * z1z1;
  }

  /// Fixed 4-bit window scalar multiplication by a non-negative integer.
  Jacobian mul(const mpz_class& k) const {
    Jacobian result = infinity(F::one(x.ctx()));
    if (k == 0 || is_infinity()) return result;
    std::array<Jacobian, 16> table;
    table[0] = result;
    table[1] = *this;
    for (int i = 2; i < 16; ++i) table[i] = table[i - 1].add(*this);
    std::size_t nbits = mpz_sizeinbase(k.get_mpz_t(), 2);
    std::size_t windows = (nbits + 3) / 4;
    for (std::size_t w = windows; w-- > 0;) {
      result = result.dbl().dbl().dbl().dbl();
      unsigned digit = 0;
      for (int b = 3; b >= 0; --b) digit = (digit << 1) | mpz_tstbit(k.get_mpz_t(), w * 4 + b);
      if (digit) result = result.add(table[digit]);
    }
    return result;
  }
};

}  // namespace abbe::detail
