// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/hash.hpp"

#include <openssl/evp.h>

#include <memory>

#include "abbe/errors.hpp"

namespace abbe {
namespace {

template <std::size_t N>
std::array<std::uint8_t, N> digest(const EVP_MD* md, std::initializer_list<std::span<const std::uint8_t>> parts) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
  std::array<std::uint8_t, N> out{};
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), md, nullptr) != 1) throw Error(ErrorCode::kIo, "digest init failed");
  for (auto p : parts) {
    if (EVP_DigestUpdate(ctx.get(), p.data(), p.size()) != 1) throw Error(ErrorCode::kIo, "digest update failed");
  }
  if (EVP_DigestFinal_ex(ctx.get(), out.data(), &len) != 1 || len != N)
    throw Error(ErrorCode::kIo, "digest final failed");
  return out;
}

}  // namespace

Digest256 sha256(std::span<const std::uint8_t> data) { return digest<32>(EVP_sha256(), {data}); }

Digest256 sha256(std::initializer_list<std::span<const std::uint8_t>> parts) {
  return digest<32>(EVP_sha256(), parts);
}

Digest512 sha512(std::initializer_list<std::span<const std::uint8_t>> parts) {
  return digest<64>(EVP_sha512(), parts);
}

struct Sha256::Impl {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx{EVP_MD_CTX_new(), &EVP_MD_CTX_free};
};

Sha256::Sha256() : impl_(std::make_unique<Impl>()) {
  if (!impl_->ctx || EVP_DigestInit_ex(impl_->ctx.get(), EVP_sha256(), nullptr) != 1)
    throw Error(ErrorCode::kIo, "digest init failed");
}

Sha256::~Sha256() = default;
Sha256::Sha256(Sha256&&) noexcept = default;
Sha256& Sha256::operator=(Sha256&&) noexcept = default;

void Sha256::update(std::span<const std::uint8_t> data) {
  if (EVP_DigestUpdate(impl_->ctx.get(), data.data(), data.size()) != 1) throw Error(ErrorCode::kIo, "digest update failed");
}

Digest256 Sha256::finish() {
  Digest256 out{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(impl_->ctx.get(), out.data(), &len) != 1 || len != out.size())
    throw Error(ErrorCode::kIo, "digest final failed");
  return out;
}

}  // namespace abbe
