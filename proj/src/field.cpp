// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/field.hpp"

#include <algorithm>

#include "abbe/errors.hpp"

namespace abbe {

namespace {
Limbs mont_mul(const Limbs& a, const Limbs& b, const ModulusContext& c) { return detail::mont_mul(a, b, c.m, c.n0inv); }
}  // namespace

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kUnsupportedSecurityLevel: return "UnsupportedSecurityLevel";
    case ErrorCode::kWrongGroup: return "WrongGroup";
    case ErrorCode::kDecode: return "DecodeError";
    case ErrorCode::kDuplicateUser: return "DuplicateUser";
    case ErrorCode::kUnknownAttribute: return "UnknownAttribute";
    case ErrorCode::kUnknownUser: return "UnknownUser";
    case ErrorCode::kUnknownRevokedUser: return "UnknownRevokedUser";
    case ErrorCode::kMismatchedCurve: return "MismatchedCurve";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kSchemaViolation: return "SchemaViolation";
    case ErrorCode::kAuthFailure: return "AuthFailure";
    case ErrorCode::kNoRoute: return "NoRoute";
    case ErrorCode::kTimeout: return "Timeout";
    case ErrorCode::kSignatureInvalid: return "SignatureInvalid";
    case ErrorCode::kPrefixNotRegistered: return "PrefixNotRegistered";
    case ErrorCode::kNotAuthorized: return "NotAuthorized";
    case ErrorCode::kIo: return "IoError";
  }
  return "Error";
}

Limbs limbs_from_mpz(const mpz_class& v) {
  Limbs out{};
  std::size_t count = 0;
  mpz_export(out.data(), &count, -1, sizeof(std::uint64_t), 0, 0, v.get_mpz_t());
  return out;
}

mpz_class mpz_from_limbs(const Limbs& v) {
  mpz_class out;
  mpz_import(out.get_mpz_t(), 4, -1, sizeof(std::uint64_t), 0, 0, v.data());
  return out;
}

mpz_class mpz_from_bytes(std::span<const std::uint8_t> be) {
  mpz_class out;
  if (!be.empty()) mpz_import(out.get_mpz_t(), be.size(), 1, 1, 1, 0, be.data());
  return out;
}

std::vector<std::uint8_t> mpz_to_bytes(const mpz_class& v, std::size_t width) {
  std::vector<std::uint8_t> out(width, 0);
  std::size_t need = (mpz_sizeinbase(v.get_mpz_t(), 2) + 7) / 8;
  if (v == 0) return out;
  if (need > width) throw Error(ErrorCode::kInvalidArgument, "integer does not fit in field width");
  std::size_t count = 0;
  mpz_export(out.data() + (width - need), &count, 1, 1, 1, 0, v.get_mpz_t());
  return out;
}

std::string mpz_to_hex(const mpz_class& v) { return "0x" + v.get_str(16); }

mpz_class mpz_from_hex(const std::string& s) {
  std::string body = s;
  if (body.size() >= 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) body = body.substr(2);
  if (body.empty() || !std::all_of(body.begin(), body.end(), [](char c) { return std::isxdigit(static_cast<unsigned char>(c)); }))
    throw Error(ErrorCode::kDecode, "malformed hex integer '" + s + "'");
  return mpz_class(body, 16);
}

ModulusContext::ModulusContext(const mpz_class& mod) : modulus(mod) {
  if (mod <= 2 || mpz_even_p(mod.get_mpz_t()) || mpz_sizeinbase(mod.get_mpz_t(), 2) > 256)
    throw Error(ErrorCode::kInvalidArgument, "modulus must be odd and at most 256 bits");
  m = limbs_from_mpz(mod);
  bits = mpz_sizeinbase(mod.get_mpz_t(), 2);
  std::uint64_t inv = 1;
  for (int i = 0; i < 6; ++i) inv *= 2 - m[0] * inv;  // Newton iteration mod 2^64
  n0inv = ~inv + 1;
  mpz_class R = mpz_class(1) << 256;
  one = limbs_from_mpz(R % mod);
  r2 = limbs_from_mpz((R * R) % mod);
  m_minus_2 = mod - 2;
  m_plus_1_div_4 = (mod + 1) / 4;
  m_minus_1_div_2 = (mod - 1) / 2;
}

Fp::Fp(const ModulusContext* ctx, std::uint64_t small) : ctx_(ctx) {
  Limbs a{small, 0, 0, 0};
  if (small >= ctx->m[0] && ctx->m[1] == 0 && ctx->m[2] == 0 && ctx->m[3] == 0)
    a[0] = small % ctx->m[0];
  v_ = mont_mul(a, ctx->r2, *ctx);
}

Fp::Fp(const ModulusContext* ctx, const mpz_class& value) : ctx_(ctx) {
  mpz_class reduced = value % ctx->modulus;
  if (reduced < 0) reduced += ctx->modulus;
  v_ = mont_mul(limbs_from_mpz(reduced), ctx->r2, *ctx);
}

Fp Fp::from_bytes(const ModulusContext* ctx, std::span<const std::uint8_t> be) {
  if (be.size() != ctx->bytes) throw Error(ErrorCode::kDecode, "field element has wrong length");
  mpz_class v = mpz_from_bytes(be);
  if (v >= ctx->modulus) throw Error(ErrorCode::kDecode, "field element not reduced");
  return Fp(ctx, v);
}

Limbs Fp::canonical() const {
  Limbs one_raw{1, 0, 0, 0};
  return mont_mul(v_, one_raw, *ctx_);
}

bool Fp::is_odd() const { return canonical()[0] & 1; }

mpz_class Fp::to_mpz() const { return mpz_from_limbs(canonical()); }

std::vector<std::uint8_t> Fp::to_bytes() const { return mpz_to_bytes(to_mpz(), ctx_->bytes); }

Fp Fp::pow(const mpz_class& e) const {
  Fp result = Fp::one(ctx_);
  std::size_t nbits = mpz_sizeinbase(e.get_mpz_t(), 2);
  if (e == 0) return result;
  for (std::size_t i = nbits; i-- > 0;) {
    result = result.square();
    if (mpz_tstbit(e.get_mpz_t(), i)) result = result * *this;
  }
  return result;
}

Fp Fp::inverse() const {
  if (is_zero()) return *this;
  // (aR)^-1 via extended gcd, then two Montgomery steps by R^2 give a^-1 R.
  mpz_class raw = mpz_from_limbs(v_), inv;
  mpz_invert(inv.get_mpz_t(), raw.get_mpz_t(), ctx_->modulus.get_mpz_t());
  Fp r(ctx_);
  r.v_ = mont_mul(mont_mul(limbs_from_mpz(inv), ctx_->r2, *ctx_), ctx_->r2, *ctx_);
  return r;
}

bool Fp::is_square() const {
  if (is_zero()) return true;
  return pow(ctx_->m_minus_1_div_2).is_one();
}

bool Fp::sqrt(Fp& out) const {
  Fp cand = pow(ctx_->m_plus_1_div_4);
  if (cand.square() != *this) return false;
  out = cand;
  return true;
}

}  // namespace abbe
