// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Producer signatures on Data packets. Data is signed over
// SHA-256(signed_portion(data)); the default scheme is Ed25519, whose
// signatures are deterministic and 64 bytes long.

#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "abbe/ndn/packet.hpp"
#include "abbe/rng.hpp"

typedef struct evp_pkey_st EVP_PKEY;

namespace abbe::ndn {

class Verifier {
 public:
  virtual ~Verifier() = default;
  virtual bool verify(std::span<const std::uint8_t> msg, std::span<const std::uint8_t> sig) const = 0;
};

class Signer {
 public:
  virtual ~Signer() = default;
  virtual std::vector<std::uint8_t> sign(std::span<const std::uint8_t> msg) const = 0;
  virtual std::shared_ptr<const Verifier> verifier() const = 0;
};

class Ed25519Verifier : public Verifier {
 public:
  explicit Ed25519Verifier(std::span<const std::uint8_t> public_key);
  ~Ed25519Verifier() override;
  bool verify(std::span<const std::uint8_t> msg, std::span<const std::uint8_t> sig) const override;
  const std::array<std::uint8_t, 32>& public_key() const { return pub_; }

 private:
  std::array<std::uint8_t, 32> pub_{};
  EVP_PKEY* key_ = nullptr;
};

class Ed25519Signer : public Signer {
 public:
  /// Private key derived from 32 bytes of the given generator.
  explicit Ed25519Signer(Rng& rng);
  ~Ed25519Signer() override;
  Ed25519Signer(const Ed25519Signer&) = delete;
  Ed25519Signer& operator=(const Ed25519Signer&) = delete;

  std::vector<std::uint8_t> sign(std::span<const std::uint8_t> msg) const override;
  std::shared_ptr<const Verifier> verifier() const override { return verifier_; }

 private:
  EVP_PKEY* key_ = nullptr;
  std::shared_ptr<const Ed25519Verifier> verifier_;
};

void sign_data(Data& d, const Signer& signer);
bool verify_data(const Data& d, const Verifier& verifier);

}  // namespace abbe::ndn
