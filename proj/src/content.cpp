// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

#include "abbe/content.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cstring>
#include <fstream>
#include <istream>
#include <memory>
#include <ostream>

#include "abbe/errors.hpp"

namespace abbe::content {

namespace {

using CipherCtx = std::unique_ptr<EVP_CIPHER_CTX, decltype(&EVP_CIPHER_CTX_free)>;

std::vector<std::uint8_t> aad_for(const std::string& name) {
  if (name.size() > 0xffff) throw Error(ErrorCode::kInvalidArgument, "header name too long");
  std::vector<std::uint8_t> aad(kMagic.begin(), kMagic.end());
  aad.push_back(static_cast<std::uint8_t>(name.size() >> 8));
  aad.push_back(static_cast<std::uint8_t>(name.size() & 0xff));
  aad.insert(aad.end(), name.begin(), name.end());
  return aad;
}

void check(int ok, const char* what) {
  if (ok != 1) throw Error(ErrorCode::kIo, std::string("OpenSSL failure in ") + what);
}

class Gcm {
 public:
  Gcm(bool encrypt, const SessionKey& key, std::span<const std::uint8_t> nonce, const std::string& name)
      : ctx_(EVP_CIPHER_CTX_new(), EVP_CIPHER_CTX_free), encrypt_(encrypt) {
    if (!ctx_) throw Error(ErrorCode::kIo, "cannot allocate cipher context");
    auto init = encrypt ? EVP_EncryptInit_ex : EVP_DecryptInit_ex;
    check(init(ctx_.get(), EVP_aes_256_gcm(), nullptr, nullptr, nullptr), "init");
    check(EVP_CIPHER_CTX_ctrl(ctx_.get(), EVP_CTRL_GCM_SET_IVLEN, static_cast<int>(nonce.size()), nullptr), "ivlen");
    check(init(ctx_.get(), nullptr, nullptr, key.bytes.data(), nonce.data()), "key");
    auto aad = aad_for(name);
    int len = 0;
    check(update_raw(nullptr, &len, aad.data(), aad.size()), "aad");
  }

  void update(std::span<const std::uint8_t> in, std::uint8_t* out) {
    std::size_t done = 0;
    while (done < in.size()) {
      int step = static_cast<int>(std::min<std::size_t>(in.size() - done, kChunkBytes));
      int len = 0;
      check(update_raw(out + done, &len, in.data() + done, step), "update");
      done += static_cast<std::size_t>(step);
    }
  }

  std::array<std::uint8_t, kTagBytes> finish_encrypt() {
    int len = 0;
    std::uint8_t scratch[16];
    check(EVP_EncryptFinal_ex(ctx_.get(), scratch, &len), "final");
    std::array<std::uint8_t, kTagBytes> tag{};
    check(EVP_CIPHER_CTX_ctrl(ctx_.get(), EVP_CTRL_GCM_GET_TAG, kTagBytes, tag.data()), "tag");
    return tag;
  }

  void finish_decrypt(std::span<const std::uint8_t> tag) {
    std::array<std::uint8_t, kTagBytes> t{};
    std::copy(tag.begin(), tag.end(), t.begin());
    check(EVP_CIPHER_CTX_ctrl(ctx_.get(), EVP_CTRL_GCM_SET_TAG, kTagBytes, t.data()), "set tag");
    int len = 0;
    std::uint8_t scratch[16];
    if (EVP_DecryptFinal_ex(ctx_.get(), scratch, &len) != 1)
      throw Error(ErrorCode::kAuthFailure, "authentication tag mismatch");
  }

 private:
  int update_raw(std::uint8_t* out, int* len, const std::uint8_t* in, std::size_t n) {
    return encrypt_ ? EVP_EncryptUpdate(ctx_.get(), out, len, in, static_cast<int>(n))
                    : EVP_DecryptUpdate(ctx_.get(), out, len, in, static_cast<int>(n));
  }

  CipherCtx ctx_;
  bool encrypt_;
};

std::vector<std::uint8_t> prefix_bytes(const std::array<std::uint8_t, kNonceBytes>& nonce, const std::string& name) {
  std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
  out.insert(out.end(), nonce.begin(), nonce.end());
  out.push_back(static_cast<std::uint8_t>(name.size() >> 8));
  out.push_back(static_cast<std::uint8_t>(name.size() & 0xff));
  out.insert(out.end(), name.begin(), name.end());
  return out;
}

void write_all(std::ostream& out, const std::uint8_t* src, std::size_t n) {
  out.write(reinterpret_cast<const char*>(src), static_cast<std::streamsize>(n));
  if (!out) throw Error(ErrorCode::kIo, "write failed");
}

}  // namespace

EncryptedObject encrypt_object(const SessionKey& key, std::span<const std::uint8_t> plaintext,
                               const std::string& header_name, Rng& rng) {
  EncryptedObject obj;
  rng.fill(obj.nonce);
  obj.header_name = header_name;
  Gcm gcm(true, key, obj.nonce, header_name);
  obj.ciphertext.resize(plaintext.size());
  gcm.update(plaintext, obj.ciphertext.data());
  obj.tag = gcm.finish_encrypt();
  return obj;
}

std::vector<std::uint8_t> decrypt_object(const SessionKey& key, const EncryptedObject& obj) {
  Gcm gcm(false, key, obj.nonce, obj.header_name);
  std::vector<std::uint8_t> out(obj.ciphertext.size());
  gcm.update(obj.ciphertext, out.data());
  gcm.finish_decrypt(obj.tag);
  return out;
}

std::vector<std::uint8_t> serialize(const EncryptedObject& obj) {
  auto out = prefix_bytes(obj.nonce, obj.header_name);
  out.reserve(out.size() + obj.ciphertext.size() + kTagBytes);
  out.insert(out.end(), obj.ciphertext.begin(), obj.ciphertext.end());
  out.insert(out.end(), obj.tag.begin(), obj.tag.end());
  return out;
}

EncryptedObject parse(std::span<const std::uint8_t> b) {
  std::size_t fixed = kMagic.size() + kNonceBytes + 2;
  if (b.size() < fixed + kTagBytes || std::memcmp(b.data(), kMagic.data(), kMagic.size()) != 0)
    throw Error(ErrorCode::kDecode, "not an ABBE1 object");
  EncryptedObject obj;
  std::copy_n(b.begin() + kMagic.size(), kNonceBytes, obj.nonce.begin());
  std::size_t name_len = (std::size_t{b[fixed - 2]} << 8) | b[fixed - 1];
  if (b.size() < fixed + name_len + kTagBytes) throw Error(ErrorCode::kDecode, "truncated ABBE1 object");
  obj.header_name.assign(b.begin() + fixed, b.begin() + fixed + name_len);
  obj.ciphertext.assign(b.begin() + fixed + name_len, b.end() - kTagBytes);
  std::copy(b.end() - kTagBytes, b.end(), obj.tag.begin());
  return obj;
}

void encrypt_stream(const SessionKey& key, std::istream& in, std::ostream& out, const std::string& header_name,
                    Rng& rng) {
  std::array<std::uint8_t, kNonceBytes> nonce{};
  rng.fill(nonce);
  auto prefix = prefix_bytes(nonce, header_name);
  write_all(out, prefix.data(), prefix.size());
  Gcm gcm(true, key, nonce, header_name);
  std::vector<std::uint8_t> buf(kChunkBytes), enc(kChunkBytes);
  for (;;) {
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    auto n = static_cast<std::size_t>(in.gcount());
    if (n == 0) break;
    gcm.update({buf.data(), n}, enc.data());
    write_all(out, enc.data(), n);
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed");
  auto tag = gcm.finish_encrypt();
  write_all(out, tag.data(), tag.size());
}

struct StreamDecryptor::Impl {
  SessionKey key;
  Sink sink;
  std::vector<std::uint8_t> prefix;  // bytes of the fixed prefix seen so far
  std::size_t prefix_len = kMagic.size() + kNonceBytes + 2;
  bool header_done = false;
  std::string name;
  std::unique_ptr<Gcm> gcm;
  std::vector<std::uint8_t> tail;  // last bytes seen, possibly the tag
  std::vector<std::uint8_t> out;

  void start() {
    if (std::memcmp(prefix.data(), kMagic.data(), kMagic.size()) != 0) throw Error(ErrorCode::kDecode, "not an ABBE1 object");
    std::size_t fixed = kMagic.size() + kNonceBytes + 2;
    if (prefix.size() == fixed) {
      std::size_t name_len = (std::size_t{prefix[fixed - 2]} << 8) | prefix[fixed - 1];
      prefix_len = fixed + name_len;
      if (name_len > 0) return;
    }
    name.assign(prefix.begin() + static_cast<std::ptrdiff_t>(fixed), prefix.end());
    gcm = std::make_unique<Gcm>(false, key, std::span(prefix).subspan(kMagic.size(), kNonceBytes), name);
    header_done = true;
  }
};

StreamDecryptor::StreamDecryptor(const SessionKey& key, Sink sink) : impl_(std::make_unique<Impl>()) {
  impl_->key = key;
  impl_->sink = std::move(sink);
}

StreamDecryptor::~StreamDecryptor() = default;

void StreamDecryptor::feed(std::span<const std::uint8_t> bytes) {
  Impl& s = *impl_;
  while (!s.header_done && !bytes.empty()) {
    std::size_t take = std::min(bytes.size(), s.prefix_len - s.prefix.size());
    s.prefix.insert(s.prefix.end(), bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(take));
    bytes = bytes.subspan(take);
    if (s.prefix.size() == s.prefix_len) s.start();
  }
  if (bytes.empty()) return;
  // Everything except the final kTagBytes seen so far is ciphertext.
  std::size_t total = s.tail.size() + bytes.size();
  if (total <= kTagBytes) {
    s.tail.insert(s.tail.end(), bytes.begin(), bytes.end());
    return;
  }
  std::size_t ready = total - kTagBytes;
  s.out.resize(ready);
  std::size_t from_tail = std::min(ready, s.tail.size());
  if (from_tail > 0) s.gcm->update({s.tail.data(), from_tail}, s.out.data());
  std::size_t from_bytes = ready - from_tail;
  if (from_bytes > 0) s.gcm->update(bytes.first(from_bytes), s.out.data() + from_tail);
  std::vector<std::uint8_t> rest(s.tail.begin() + static_cast<std::ptrdiff_t>(from_tail), s.tail.end());
  rest.insert(rest.end(), bytes.begin() + static_cast<std::ptrdiff_t>(from_bytes), bytes.end());
  s.tail = std::move(rest);
  s.sink(s.out);
}

std::string StreamDecryptor::finish() {
  Impl& s = *impl_;
  if (!s.header_done || s.tail.size() != kTagBytes) throw Error(ErrorCode::kDecode, "truncated ABBE1 object");
  s.gcm->finish_decrypt(s.tail);
  return s.name;
}

std::string decrypt_stream(const SessionKey& key, std::istream& in, std::ostream& out) {
  StreamDecryptor dec(key, [&](std::span<const std::uint8_t> p) { write_all(out, p.data(), p.size()); });
  std::vector<std::uint8_t> buf(kChunkBytes);
  for (;;) {
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(buf.size()));
    auto n = static_cast<std::size_t>(in.gcount());
    if (n == 0) break;
    dec.feed({buf.data(), n});
  }
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed");
  return dec.finish();
}

void encrypt_file(const SessionKey& key, const std::filesystem::path& in_path, const std::filesystem::path& out_path,
                  const std::string& header_name, Rng& rng) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + in_path.string());
  std::ofstream out(out_path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot create " + out_path.string());
  encrypt_stream(key, in, out, header_name, rng);
}

std::string decrypt_file(const SessionKey& key, const std::filesystem::path& in_path,
                         const std::filesystem::path& out_path) {
  std::ifstream in(in_path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + in_path.string());
  auto tmp = out_path;
  tmp += ".partial";
  std::string name;
  try {
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) throw Error(ErrorCode::kIo, "cannot create " + tmp.string());
      name = decrypt_stream(key, in, out);
    }
    std::filesystem::rename(tmp, out_path);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(tmp, ec);
    throw;
  }
  return name;
}

}  // namespace abbe::content
