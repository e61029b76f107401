// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/tower.hpp"

#include <utility>

#include "abbe/errors.hpp"

namespace abbe {

Fp2 Fp2::pow(const mpz_class& e) const {
  Fp2 result = Fp2::one(ctx());
  if (e == 0) return result;
  for (std::size_t i = mpz_sizeinbase(e.get_mpz_t(), 2); i-- > 0;) {
    result = result.square();
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
  }
  return result;
}

bool Fp2::is_square() const {
  if (is_zero()) return true;
  // Norm map: a is a square in Fp2 iff N(a) is a square in Fp.
  return (c0.square() + c1.square()).is_square();
}

bool Fp2::sqrt(Fp2& out) const {
  if (is_zero()) {
    out = *this;
    return true;
  }
  const ModulusContext* ctx = this->ctx();
  const mpz_class& p = ctx->modulus;
  // Algorithm 9 of Adj and Rodriguez-Henriquez for p = 3 mod 4.
  Fp2 a1 = pow((p - 3) / 4);
  Fp2 alpha = a1.square() * *this;
  Fp2 a0 = alpha.conj() * alpha;  // alpha^p * alpha
  Fp2 minus_one = -Fp2::one(ctx);
  if (a0 == minus_one) return false;
  Fp2 x0 = a1 * *this;
  Fp2 cand;
  if (alpha == minus_one) {
    cand = Fp2{-x0.c1, x0.c0};  // i * x0
  } else {
    Fp2 b = (Fp2::one(ctx) + alpha).pow((p - 1) / 2);
    cand = b * x0;
  }
  if (cand.square() != *this) return false;
  out = cand;
  return true;
}

Fp6 Fp6::operator*(const Fp6& o) const {
  Fp2 v0 = c0 * o.c0;
  Fp2 v1 = c1 * o.c1;
  Fp2 v2 = c2 * o.c2;
  Fp2 t0 = ((c1 + c2) * (o.c1 + o.c2) - v1 - v2).mul_by_xi() + v0;
  Fp2 t1 = (c0 + c1) * (o.c0 + o.c1) - v0 - v1 + v2.mul_by_xi();
  Fp2 t2 = (c0 + c2) * (o.c0 + o.c2) - v0 - v2 + v1;
  return {t0, t1, t2};
}

Fp6 Fp6::inverse() const {
  Fp2 a = c0.square() - (c1 * c2).mul_by_xi();
  Fp2 b = c2.square().mul_by_xi() - c0 * c1;
  Fp2 c = c1.square() - c0 * c2;
  Fp2 f = c0 * a + (c2 * b + c1 * c).mul_by_xi();
  Fp2 fi = f.inverse();
  return {a * fi, b * fi, c * fi};
}

Fp2& Fp12::coeff(int k) {
  Fp6& half = (k % 2 == 0) ? c0 : c1;
  switch (k / 2) {
    case 0: return half.c0;
    case 1: return half.c1;
    default: return half.c2;
  }
}

const Fp2& Fp12::coeff(int k) const { return const_cast<Fp12*>(this)->coeff(k); }

bool Fp12::is_one() const {
  return c0.c0.is_one() && c0.c1.is_zero() && c0.c2.is_zero() && c1.is_zero();
}

Fp12 Fp12::operator*(const Fp12& o) const {
  Fp6 a = c0 * o.c0;
  Fp6 b = c1 * o.c1;
  Fp6 m = (c0 + c1) * (o.c0 + o.c1);
  return {a + b.mul_by_v(), m - a - b};
}

Fp12 Fp12::square() const {
  // (a + b w)^2 = a^2 + b^2 v + 2ab w, computed with the complex trick.
  Fp6 ab = c0 * c1;
  Fp6 t = (c0 + c1) * (c0 + c1.mul_by_v());
  return {t - ab - ab.mul_by_v(), ab + ab};
}

Fp12 Fp12::inverse() const {
  Fp6 t = (c0.square() - c1.square().mul_by_v()).inverse();
  return {c0 * t, -(c1 * t)};
}

Fp12 Fp12::frobenius() const {
  const ModulusContext* ctx = this->ctx();
  Fp12 out = *this;
  for (int k = 0; k < 6; ++k) {
    Fp2 c = coeff(k).conj();
    if (k != 0) c = c * Fp2::from_raw(ctx, ctx->frob[k]);
    out.coeff(k) = c;
  }
  return out;
}

Fp12 Fp12::frobenius2() const {
  const ModulusContext* ctx = this->ctx();
  Fp12 out = *this;
  for (int k = 1; k < 6; ++k) out.coeff(k) = coeff(k) * Fp2::from_raw(ctx, ctx->frob2[k]);
  return out;
}

Fp12 Fp12::pow(const mpz_class& e) const {
  Fp12 result = Fp12::one(ctx());
  if (e == 0) return result;
  mpz_class ee = e;
  Fp12 base = *this;
  if (ee < 0) {
    ee = -ee;
    base = base.inverse();
  }
  // Fixed 4-bit window.
  std::array<Fp12, 16> table;
  table[0] = Fp12::one(ctx());
  for (int i = 1; i < 16; ++i) table[i] = table[i - 1] * base;
  std::size_t nbits = mpz_sizeinbase(ee.get_mpz_t(), 2);
  std::size_t windows = (nbits + 3) / 4;
  for (std::size_t w = windows; w-- > 0;) {
    for (int s = 0; s < 4; ++s) result = result.square();
    unsigned digit = 0;
    for (int b = 3; b >= 0; --b) digit = (digit << 1) | mpz_tstbit(ee.get_mpz_t(), w * 4 + b);
    if (digit) result = result * table[digit];
  }
  return result;
}

Fp12 Fp12::pow_u64(std::uint64_t e) const {
  Fp12 result = Fp12::one(ctx());
  for (int i = 63; i >= 0; --i) {
    result = result.square();
    if ((e >> i) & 1) result = result * *this;
  }
  return result;
}

namespace {

// (a + b s)^2 in Fp4 = Fp2[s]/(s^2 - xi).
std::pair<Fp2, Fp2> fp4_square(const Fp2& a, const Fp2& b) {
  Fp2 t0 = a.square();
  Fp2 t1 = b.square();
  return {t1.mul_by_xi() + t0, (a + b).square() - t0 - t1};
}

}  // namespace

// Granger-Scott: view the element as three Fp4 coefficients and square each.
Fp12 Fp12::cyclotomic_square() const {
  Fp2 z0 = c0.c0, z4 = c0.c1, z3 = c0.c2;
  Fp2 z2 = c1.c0, z1 = c1.c1, z5 = c1.c2;

  auto [a0, a1] = fp4_square(z0, z1);
  z0 = a0 - z0;
  z0 = z0 + z0 + a0;
  z1 = a1 + z1;
  z1 = z1 + z1 + a1;

  auto [b0, b1] = fp4_square(z2, z3);
  auto [c0s, c1s] = fp4_square(z4, z5);
  z4 = b0 - z4;
  z4 = z4 + z4 + b0;
  z5 = b1 + z5;
  z5 = z5 + z5 + b1;

  Fp2 t = c1s.mul_by_xi();
  z2 = t + z2;
  z2 = z2 + z2 + t;
  z3 = c0s - z3;
  z3 = z3 + z3 + c0s;

  return {{z0, z4, z3}, {z2, z1, z5}};
}

Fp12 Fp12::cyclotomic_pow(const mpz_class& e) const {
  Fp12 result = Fp12::one(ctx());
  if (e == 0) return result;
  mpz_class ee = e;
  Fp12 base = *this;
  if (ee < 0) {
    // The inverse of a unitary element is its conjugate.
    ee = -ee;
    base = base.conj();
  }
  std::array<Fp12, 16> table;
  table[0] = Fp12::one(ctx());
  for (int i = 1; i < 16; ++i) table[i] = table[i - 1] * base;
  std::size_t nbits = mpz_sizeinbase(ee.get_mpz_t(), 2);
  std::size_t windows = (nbits + 3) / 4;
  for (std::size_t w = windows; w-- > 0;) {
    for (int s = 0; s < 4; ++s) result = result.cyclotomic_square();
    unsigned digit = 0;
    for (int b = 3; b >= 0; --b) digit = (digit << 1) | mpz_tstbit(ee.get_mpz_t(), w * 4 + b);
    if (digit) result = result * table[digit];
  }
  return result;
}

Fp12 Fp12::cyclotomic_pow_u64(std::uint64_t e) const {
  Fp12 result = Fp12::one(ctx());
  for (int i = 63; i >= 0; --i) {
    result = result.cyclotomic_square();
    if ((e >> i) & 1) result = result * *this;
  }
  return result;
}

void install_tower_constants(ModulusContext& ctx) {
  const mpz_class& p = ctx.modulus;
  if (p % 4 != 3) throw Error(ErrorCode::kInvalidArgument, "tower requires p = 3 mod 4");
  if (p % 6 != 1) throw Error(ErrorCode::kInvalidArgument, "tower requires p = 1 mod 6");
  for (std::uint64_t c = 1; c < 1000; ++c) {
    Fp2 xi{Fp(&ctx, c), Fp::one(&ctx)};
    // g = xi^((p-1)/6) and w = xi^((p^2-1)/6) = g^(p+1) = conj(g) * g.
    Fp2 g = xi.pow((p - 1) / 6);
    Fp2 w = g.conj() * g;
    // xi is a non-square iff w^3 != 1 and a non-cube iff w^2 != 1.
    if (w.square().is_one() || (w.square() * w).is_one()) continue;
    ctx.xi_c0 = xi.c0.raw();
    Fp2 gk = Fp2::one(&ctx), wk = Fp2::one(&ctx);
    for (int k = 0; k < 6; ++k) {
      ctx.frob[k] = {gk.c0.raw(), gk.c1.raw()};
      ctx.frob2[k] = {wk.c0.raw(), wk.c1.raw()};
      gk = gk * g;
      wk = wk * w;
    }
    return;
  }
  throw Error(ErrorCode::kInvalidArgument, "no sextic non-residue of the form c + i found");
}

}  // namespace abbe
