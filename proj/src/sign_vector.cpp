#include "anticonc/sign_vector.hpp"

#include <bit>

namespace anticonc {

SignVector::SignVector(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

SignVector SignVector::from_mask(std::uint64_t mask, std::size_t n) {
  if (n > 64) throw ValidationError("from_mask: dimension above 64");
  SignVector v(n);
  if (n > 0) {
    v.words_[0] = n == 64 ? mask : (mask & ((std::uint64_t{1} << n) - 1));
  }
  return v;
}

SignVector SignVector::from_string(std::string_view text) {
  SignVector v(text.size());
  for (std::size_t j = 0; j < text.size(); ++j) {
    if (text[j] == '-') {
      v.flip(j);
    } else if (text[j] != '+') {
      throw ValidationError("sign vector: unexpected character '" + std::string(1, text[j]) +
                            "' at position " + std::to_string(j));
    }
  }
  return v;
}

SignVector SignVector::from_entries(std::span<const int> entries) {
  SignVector v(entries.size());
  for (std::size_t j = 0; j < entries.size(); ++j) v.set(j, entries[j]);
  return v;
}

void SignVector::set(std::size_t j, int value) {
  if (value != 1 && value != -1) {
    throw ValidationError("sign vector entries must be +1 or -1");
  }
  if (negative(j) != (value == -1)) flip(j);
}

std::size_t SignVector::count_negative() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::uint64_t SignVector::mask() const {
  if (n_ > 64) throw ValidationError("mask: dimension above 64");
  return words_.empty() ? 0 : words_[0];
}

std::string SignVector::to_string() const {
  std::string s(n_, '+');
  for (std::size_t j = 0; j < n_; ++j) {
    if (negative(j)) s[j] = '-';
  }
  return s;
}

Direction SignVector::to_direction() const {
  Direction d(n_);
  for (std::size_t j = 0; j < n_; ++j) d[j] = (*this)[j];
  return d;
}

long long inner_product(const SignVector& x, const SignVector& y) {
  if (x.size() != y.size()) throw ValidationError("inner product: dimension mismatch");
  long long differing = 0;
  auto xw = x.words();
  auto yw = y.words();
  for (std::size_t i = 0; i < xw.size(); ++i) differing += std::popcount(xw[i] ^ yw[i]);
  return static_cast<long long>(x.size()) - 2 * differing;
}

long long inner_product(const Direction& x, const SignVector& y) {
  if (x.size() != y.size()) throw ValidationError("inner product: dimension mismatch");
  long long s = 0;
  for (std::size_t j = 0; j < x.size(); ++j) s += y.negative(j) ? -x[j] : x[j];
  return s;
}

SignVector signing_orbit(const SignVector& x, const SignVector& b) {
  if (x.size() != b.size()) throw ValidationError("signing_orbit: dimension mismatch");
  SignVector r = x;
  for (std::size_t i = 0; i < r.words_.size(); ++i) r.words_[i] ^= b.words_[i];
  return r;
}

}  // namespace anticonc
