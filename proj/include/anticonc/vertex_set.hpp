#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "anticonc/common.hpp"
#include "anticonc/set_spec.hpp"
#include "anticonc/sign_vector.hpp"

namespace anticonc {

enum class SetKind { Cube, Slice, Subspace, Mod4Class, BiasedSlice, Explicit };

/// A nonempty subset B of {+1,-1}^n.
///
/// Members are identified with bit masks (bit j set <=> y_j = -1). Under the
/// usual identification of {+1,-1} with the two-element field (-1 -> 1,
/// +1 -> 0) the mask is the field vector itself, so the XOR of masks is the
/// field sum and the coordinatewise product of sign vectors.
///
/// For n <= 24 the member list is materialized at construction in ascending
/// mask order; that order is the enumeration order everywhere downstream.
/// Larger sets can still be sampled. Instances are immutable and may be
/// shared freely between threads.
class VertexSet {
 public:
  static VertexSet cube(int n);
  static VertexSet slice(int n, long long sum);
  /// Span of the given rows over the two-element field; rows are reduced to
  /// echelon form, so dependent rows are allowed.
  static VertexSet subspace(int n, std::vector<SignVector> rows);
  /// Random subspace of exactly dimension dim: dim random rows are drawn and
  /// reduced; rank-deficient draws are rejected and redrawn from a fresh
  /// substream of seed.
  static VertexSet random_subspace(int n, int dim, std::uint64_t seed);
  /// Vectors whose number of -1 entries, (n - sum)/2, is congruent to r mod 2.
  static VertexSet mod4_class(int n, int r);
  /// Slice with round(eps * n) entries equal to -1.
  static VertexSet biased_slice(int n, double eps);
  static VertexSet explicit_set(int n, std::vector<SignVector> members);
  /// Uniformly random subset of the given size (n <= 24).
  static VertexSet random_subset(int n, std::uint64_t size, std::uint64_t seed);
  /// One vector per line, characters '+'/'-'. Blank lines are skipped.
  static VertexSet load_explicit(const std::filesystem::path& path);

  int dimension() const { return n_; }
  SetKind kind() const { return kind_; }
  const BigInt& size() const { return size_; }
  /// log2 |B| / n.
  double density_exponent() const;
  bool enumerable() const { return n_ <= kExhaustiveCap; }

  /// Ascending member masks; throws InfeasibleError when n > 24.
  std::span<const std::uint32_t> members() const;
  std::size_t count() const { return members().size(); }
  bool contains(const SignVector& y) const;
  /// The defining predicate of the variant, evaluated without the member list.
  bool satisfies(const SignVector& y) const;

  /// Uniform member drawn from rng.
  SignVector sample(Rng& rng) const;
  SignVector sample(std::uint64_t seed) const;

  long long target_sum() const { return target_sum_; }
  int residue() const { return residue_; }
  /// Echelon basis (Subspace only).
  const std::vector<SignVector>& basis() const { return rows_; }

 private:
  VertexSet(int n, SetKind kind) : n_(n), kind_(kind) {}
  void finish();
  void require_enumerable(const char* op) const;

  int n_ = 0;
  SetKind kind_ = SetKind::Cube;
  long long target_sum_ = 0;
  int residue_ = 0;
  std::vector<SignVector> rows_;  // subspace basis or explicit members (n > 24)
  BigInt size_ = 0;
  std::shared_ptr<const std::vector<std::uint32_t>> members_;
};

/// Builds the set a (non-twocube) spec describes.
VertexSet materialize(const SetSpec& spec);

/// Echelon reduction over the two-element field; returns the nonzero rows.
std::vector<SignVector> echelon_basis(std::vector<SignVector> rows);

}  // namespace anticonc
