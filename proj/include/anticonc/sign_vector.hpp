#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "anticonc/common.hpp"

namespace anticonc {

/// A point of {+1,-1}^n, bit-packed: coordinate j lives in bit j % 64 of
/// word j / 64, and a set bit means the entry is -1. With this packing
/// <x,y> = n - 2 * popcount(x ^ y).
class SignVector {
 public:
  SignVector() = default;
  /// All-(+1) vector of dimension n.
  explicit SignVector(std::size_t n);

  /// Low n bits of mask, bit j for coordinate j (n <= 64).
  static SignVector from_mask(std::uint64_t mask, std::size_t n);
  /// Characters '+' and '-', first character is coordinate 0.
  static SignVector from_string(std::string_view text);
  /// Entries must each be +1 or -1.
  static SignVector from_entries(std::span<const int> entries);

  std::size_t size() const { return n_; }
  int operator[](std::size_t j) const { return negative(j) ? -1 : 1; }
  bool negative(std::size_t j) const { return (words_[j >> 6] >> (j & 63)) & 1U; }
  void set(std::size_t j, int value);
  void flip(std::size_t j) { words_[j >> 6] ^= std::uint64_t{1} << (j & 63); }

  std::size_t count_negative() const;
  /// Requires size() <= 64.
  std::uint64_t mask() const;
  std::string to_string() const;
  Direction to_direction() const;
  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const SignVector&, const SignVector&) = default;

 private:
  friend SignVector signing_orbit(const SignVector&, const SignVector&);

  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

long long inner_product(const SignVector& x, const SignVector& y);

/// <x, y> for an integer direction x and a sign vector y.
long long inner_product(const Direction& x, const SignVector& y);

/// Coordinatewise product x o b (XOR of the packed words).
SignVector signing_orbit(const SignVector& x, const SignVector& b);

}  // namespace anticonc
