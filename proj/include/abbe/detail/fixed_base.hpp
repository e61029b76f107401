// Copyright 2026 The abbe-ndn Authors.
// SPDX-License-Identifier: Apache-2.0

// Fixed-base exponentiation with precomputed windows, generic over the
// group operation.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include <gmpxx.h>

namespace abbe::detail {

/// Holds base^(j * 2^(w*i)) for every window i and digit j in [1, 2^w).
/// Evaluation then needs one group operation per non-zero window digit and
/// no squarings. If Combine has a `dbl(x)` member equal to combine(x, x),
/// the even entries are built with it.
template <class T, class Combine>
class FixedBaseTable {
 public:
  static constexpr unsigned kWidth = 5;
  static constexpr std::size_t kDigits = (std::size_t{1} << kWidth) - 1;

  FixedBaseTable(const T& base, const T& identity, std::size_t bits, Combine combine = {})
      : identity_(identity), windows_((bits + kWidth - 1) / kWidth), combine_(combine) {
    entries_.reserve(windows_ * kDigits);
    T cur = base;
    for (std::size_t i = 0; i < windows_; ++i) {
      const std::size_t first = entries_.size();  // holds cur * 1
      entries_.push_back(cur);
      for (std::size_t j = 2; j <= kDigits; ++j) {
        if (j % 2 == 0)
          entries_.push_back(twice(entries_[first + j / 2 - 1]));
        else
          entries_.push_back(combine_(entries_.back(), cur));
      }
      cur = twice(entries_[first + (kDigits + 1) / 2 - 1]);
    }
  }

  /// `k` must be below 2^bits.
  T eval(const mpz_class& k) const {
    if (sgn(k) < 0 || mpz_sizeinbase(k.get_mpz_t(), 2) > windows_ * kWidth)
      throw std::out_of_range("exponent exceeds fixed-base table");
    T acc = identity_;
    for (std::size_t i = 0; i < windows_; ++i) {
      std::size_t digit = 0;
      for (unsigned b = kWidth; b-- > 0;) digit = (digit << 1) | mpz_tstbit(k.get_mpz_t(), i * kWidth + b);
      if (digit) acc = combine_(acc, entries_[i * kDigits + digit - 1]);
    }
    return acc;
  }

 private:
  T twice(const T& x) const {
    if constexpr (requires { combine_.dbl(x); })
      return combine_.dbl(x);
    else
      return combine_(x, x);
  }

  T identity_;
  std::size_t windows_;
  Combine combine_;
  std::vector<T> entries_;
};

}  // namespace abbe::detail
