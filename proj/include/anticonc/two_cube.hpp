#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <utility>
#include <vector>

#include "anticonc/common.hpp"

namespace anticonc {

/// A = A_1 x ... x A_n with A_j = {u_j, v_j}, u_j != v_j.
/// Members are indexed by choice masks: bit j clear picks u_j, set picks v_j.
class TwoCube {
 public:
  explicit TwoCube(std::vector<std::pair<long long, long long>> pairs);

  /// A_j = {s_j, -s_j}; differences 2 s_j.
  static TwoCube symmetric(std::span<const long long> values);
  /// One line per coordinate, "u v" as decimal integers.
  static TwoCube load(const std::filesystem::path& path);

  int dimension() const { return static_cast<int>(pairs_.size()); }
  const std::vector<std::pair<long long, long long>>& pairs() const { return pairs_; }
  /// d_j = u_j - v_j.
  const std::vector<long long>& differences() const { return differences_; }

  Direction member(std::uint64_t choice) const;
  /// Uniform member.
  Direction sample(Rng& rng) const;
  /// Sum_j max(|u_j|, |v_j|), the largest |<x, y>| over x in A and sign vectors y.
  long long reach() const;

 private:
  std::vector<std::pair<long long, long long>> pairs_;
  std::vector<long long> differences_;
};

}  // namespace anticonc
