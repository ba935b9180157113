#pragma once

// Exact laws of <x, Y> and <X, Y> as big-integer counts.

#include <span>
#include <string>
#include <vector>

#include "anticonc/common.hpp"
#include "anticonc/sign_vector.hpp"
#include "anticonc/vertex_set.hpp"

namespace anticonc {

/// Law of an integer random variable: counts[k - k_min] / total.
/// The support is trimmed so the first and last counts are nonzero.
class IntDistribution {
 public:
  IntDistribution(long long k_min, std::vector<BigInt> counts);

  long long k_min() const { return k_min_; }
  long long k_max() const { return k_min_ + static_cast<long long>(counts_.size()) - 1; }
  std::span<const BigInt> counts() const { return counts_; }
  const BigInt& total() const { return total_; }

  /// Zero outside the support.
  BigInt count(long long k) const;
  Rational probability(long long k) const;
  /// Probabilities as doubles, indexed by k - k_min.
  std::vector<double> probabilities() const;

  /// "k,count,total" with one row per nonzero count, k ascending.
  std::string to_csv() const;

  friend bool operator==(const IntDistribution&, const IntDistribution&) = default;

 private:
  long long k_min_;
  std::vector<BigInt> counts_;
  BigInt total_;
};

enum class PairMethod { Auto, Enumerate };

/// counts[k] = #{y in B : <x, y> = k}.
IntDistribution direction_distribution(const Direction& x, const VertexSet& B);

/// counts[k] = #{(x, y) in A x B : <x, y> = k}. Auto uses the binomial
/// closed form when either set is the full cube.
IntDistribution pair_distribution(const VertexSet& A, const VertexSet& B,
                                  PairMethod method = PairMethod::Auto, unsigned jobs = 0);

/// Law of sum_j Y_j for Y uniform on the cube: counts C(n, j) at n - 2j.
IntDistribution binomial_distribution(int n);

Rational concentration_probability(const IntDistribution& d);
/// max over k in [k_min - step, k_max] of |P(k) - P(k + step)|.
Rational smoothness_gap(const IntDistribution& d, long long step = 4);
/// sum over |k| <= radius of P(k).
Rational interval_probability(const IntDistribution& d, long long radius);

/// Entry w is |(a + B) n S_w|, S_w the Hamming-weight-w slice, with + the
/// field sum (coordinatewise product of sign vectors).
std::vector<BigInt> slice_intersection_profile(const SignVector& a, const VertexSet& B);

}  // namespace anticonc
