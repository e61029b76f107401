// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Four-limb modular arithmetic kernels, kept inline so the tower code can
// fold them into its own loops.

#pragma once

#include <array>
#include <cstdint>

namespace abbe {

using Limbs = std::array<std::uint64_t, 4>;

namespace detail {

using u128 = unsigned __int128;

inline bool geq(const Limbs& a, const Limbs& b) {
  for (int i = 3; i >= 0; --i)
    if (a[i] != b[i]) return a[i] > b[i];
  return true;
}

inline void sub_in_place(Limbs& a, const Limbs& b) {
  std::uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
    a[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1;
  }
}

inline Limbs add_mod(const Limbs& a, const Limbs& b, const Limbs& m) {
  Limbs r;
  std::uint64_t carry = 0;
  for (int i = 0; i < 4; ++i) {
    u128 s = static_cast<u128>(a[i]) + b[i] + carry;
    r[i] = static_cast<std::uint64_t>(s);
    carry = static_cast<std::uint64_t>(s >> 64);
  }
  if (carry || geq(r, m)) sub_in_place(r, m);
  return r;
}

inline Limbs sub_mod(const Limbs& a, const Limbs& b, const Limbs& m) {
  Limbs r;
  std::uint64_t borrow = 0;
  for (int i = 0; i < 4; ++i) {
    u128 d = static_cast<u128>(a[i]) - b[i] - borrow;
    r[i] = static_cast<std::uint64_t>(d);
    borrow = static_cast<std::uint64_t>(d >> 64) & 1;
  }
  if (borrow) {
    std::uint64_t carry = 0;
    for (int i = 0; i < 4; ++i) {
      u128 s = static_cast<u128>(r[i]) + m[i] + carry;
      r[i] = static_cast<std::uint64_t>(s);
      carry = static_cast<std::uint64_t>(s >> 64);
    }
  }
  return r;
}

// CIOS Montgomery product a * b / 2^256 mod m, for any odd m < 2^256.
inline Limbs mont_mul(const Limbs& a, const Limbs& b, const Limbs& m, std::uint64_t n0inv) {
  std::uint64_t t0 = 0, t1 = 0, t2 = 0, t3 = 0, t4 = 0, t5;
  for (int i = 0; i < 4; ++i) {
    const std::uint64_t bi = b[i];
    u128 c = static_cast<u128>(a[0]) * bi + t0;
    t0 = static_cast<std::uint64_t>(c);
    c = static_cast<u128>(a[1]) * bi + t1 + (c >> 64);
    t1 = static_cast<std::uint64_t>(c);
    c = static_cast<u128>(a[2]) * bi + t2 + (c >> 64);
    t2 = static_cast<std::uint64_t>(c);
    c = static_cast<u128>(a[3]) * bi + t3 + (c >> 64);
    t3 = static_cast<std::uint64_t>(c);
    c = static_cast<u128>(t4) + (c >> 64);
    t4 = static_cast<std::uint64_t>(c);
    t5 = static_cast<std::uint64_t>(c >> 64);

    const std::uint64_t q = t0 * n0inv;
    c = static_cast<u128>(q) * m[0] + t0;
    c = static_cast<u128>(q) * m[1] + t1 + (c >> 64);
    t0 = static_cast<std::uint64_t>(c);
    c = static_cast<u128>(q) * m[2] + t2 + (c >> 64);
    t1 = static_cast<std::uint64_t>(c);
    c = static_cast<u128>(q) * m[3] + t3 + (c >> 64);
    t2 = static_cast<std::uint64_t>(c);
    c = static_cast<u128>(t4) + (c >> 64);
    t3 = static_cast<std::uint64_t>(c);
    t4 = t5 + static_cast<std::uint64_t>(c >> 64);
  }
  Limbs r{t0, t1, t2, t3};
  if (t4 != 0 || geq(r, m)) sub_in_place(r, m);
  return r;
}

}  // namespace detail
}  // namespace abbe
