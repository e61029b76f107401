// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/ndn/signer.hpp"

#include <openssl/evp.h>

#include "abbe/errors.hpp"
#include "abbe/hash.hpp"

namespace abbe::ndn {

namespace {

using MdCtx = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;

MdCtx new_md() {
  MdCtx ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx) throw Error(ErrorCode::kIo, "cannot allocate digest context");
  return ctx;
}

}  // namespace

Ed25519Verifier::Ed25519Verifier(std::span<const std::uint8_t> public_key) {
  if (public_key.size() != pub_.size()) throw Error(ErrorCode::kInvalidArgument, "Ed25519 public key must be 32 bytes");
  std::copy(public_key.begin(), public_key.end(), pub_.begin());
  key_ = EVP_PKEY_new_raw_public_key(EVP_PKEY_ED25519, nullptr, pub_.data(), pub_.size());
  if (key_ == nullptr) throw Error(ErrorCode::kInvalidArgument, "invalid Ed25519 public key");
}

Ed25519Verifier::~Ed25519Verifier() { EVP_PKEY_free(key_); }

bool Ed25519Verifier::verify(std::span<const std::uint8_t> msg, std::span<const std::uint8_t> sig) const {
  if (sig.size() != 64) return false;
  auto ctx = new_md();
  if (EVP_DigestVerifyInit(ctx.get(), nullptr, nullptr, nullptr, key_) != 1) return false;
  return EVP_DigestVerify(ctx.get(), sig.data(), sig.size(), msg.data(), msg.size()) == 1;
}

Ed25519Signer::Ed25519Signer(Rng& rng) {
  std::array<std::uint8_t, 32> seed{};
  rng.fill(seed);
  key_ = EVP_PKEY_new_raw_private_key(EVP_PKEY_ED25519, nullptr, seed.data(), seed.size());
  if (key_ == nullptr) throw Error(ErrorCode::kIo, "cannot create Ed25519 key");
  std::array<std::uint8_t, 32> pub{};
  std::size_t len = pub.size();
  if (EVP_PKEY_get_raw_public_key(key_, pub.data(), &len) != 1) throw Error(ErrorCode::kIo, "cannot export public key");
  verifier_ = std::make_shared<Ed25519Verifier>(pub);
}

Ed25519Signer::~Ed25519Signer() { EVP_PKEY_free(key_); }

std::vector<std::uint8_t> Ed25519Signer::sign(std::span<const std::uint8_t> msg) const {
  auto ctx = new_md();
  if (EVP_DigestSignInit(ctx.get(), nullptr, nullptr, nullptr, key_) != 1) throw Error(ErrorCode::kIo, "sign init");
  std::vector<std::uint8_t> sig(64);
  std::size_t len = sig.size();
  if (EVP_DigestSign(ctx.get(), sig.data(), &len, msg.data(), msg.size()) != 1) throw Error(ErrorCode::kIo, "sign");
  sig.resize(len);
  return sig;
}

void sign_data(Data& d, const Signer& signer) {
  auto digest = sha256(signed_portion(d));
  d.signature = signer.sign(digest);
}

bool verify_data(const Data& d, const Verifier& verifier) {
  auto digest = sha256(signed_portion(d));
  return verifier.verify(digest, d.signature);
}

}  // namespace abbe::ndn
