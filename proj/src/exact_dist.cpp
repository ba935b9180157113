#include "anticonc/exact_dist.hpp"

#include <bit>
#include <cstdlib>
#include <sstream>

namespace anticonc {

namespace {

constexpr long long kMaxSupportWidth = 1LL << 26;
constexpr int kSplit = 12;

IntDistribution from_histogram(long long k_min, const std::vector<std::uint64_t>& hist) {
  std::vector<BigInt> counts(hist.begin(), hist.end());
  return IntDistribution(k_min, std::move(counts));
}

// Histogram over Hamming weights w = popcount(x ^ y) mapped to k = n - 2w.
IntDistribution from_weight_histogram(int n, const std::vector<BigInt>& by_weight) {
  std::vector<BigInt> counts(static_cast<std::size_t>(2 * n + 1));
  for (int w = 0; w <= n; ++w) counts[static_cast<std::size_t>(2 * n - 2 * w)] = by_weight[w];
  return IntDistribution(-n, std::move(counts));
}

void check_same_dimension(int a, int b, const char* op) {
  if (a != b) throw ValidationError(std::string(op) + ": dimension mismatch");
}

}  // namespace

IntDistribution::IntDistribution(long long k_min, std::vector<BigInt> counts)
    : k_min_(k_min), counts_(std::move(counts)) {
  std::size_t first = 0;
  while (first < counts_.size() && counts_[first] == 0) ++first;
  std::size_t last = counts_.size();
  while (last > first && counts_[last - 1] == 0) --last;
  if (first == last) throw ValidationError("distribution has zero total mass");
  for (std::size_t i = first; i < last; ++i) {
    if (counts_[i] < 0) throw ValidationError("distribution has a negative count");
  }
  counts_.erase(counts_.begin() + static_cast<std::ptrdiff_t>(last), counts_.end());
  counts_.erase(counts_.begin(), counts_.begin() + static_cast<std::ptrdiff_t>(first));
  k_min_ += static_cast<long long>(first);
  for (const auto& c : counts_) total_ += c;
}

BigInt IntDistribution::count(long long k) const {
  if (k < k_min_ || k > k_max()) return 0;
  return counts_[static_cast<std::size_t>(k - k_min_)];
}

Rational IntDistribution::probability(long long k) const { return Rational(count(k), total_); }

std::vector<double> IntDistribution::probabilities() const {
  std::vector<double> p;
  p.reserve(counts_.size());
  for (const auto& c : counts_) p.push_back(Rational(c, total_).convert_to<double>());
  return p;
}

std::string IntDistribution::to_csv() const {
  std::ostringstream out;
  out << "k,count,total\n";
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] == 0) continue;
    out << (k_min_ + static_cast<long long>(i)) << ',' << counts_[i] << ',' << total_ << '\n';
  }
  return out.str();
}

IntDistribution binomial_distribution(int n) {
  if (n < 1) throw ValidationError("binomial_distribution: n must be positive");
  std::vector<BigInt> by_weight(static_cast<std::size_t>(n + 1));
  for (int w = 0; w <= n; ++w) by_weight[w] = binomial(static_cast<unsigned>(n), static_cast<unsigned>(w));
  return from_weight_histogram(n, by_weight);
}

IntDistribution direction_distribution(const Direction& x, const VertexSet& B) {
  const int n = B.dimension();
  check_same_dimension(static_cast<int>(x.size()), n, "direction_distribution");
  const auto members = B.members();  // enforces the exhaustive cap

  long long reach = 0;
  bool signs_only = true;
  for (auto v : x) {
    if (std::llabs(v) > kMaxSupportWidth) throw InfeasibleError("direction entry too large for a dense support");
    reach += std::llabs(v);
    signs_only = signs_only && std::llabs(v) == 1;
  }
  if (2 * reach + 1 > kMaxSupportWidth) throw InfeasibleError("direction support too wide");

  if (signs_only && B.kind() == SetKind::Cube) {
    // x o Y is uniform on the cube, so <x, Y> has the law of sum_j Y_j.
    return binomial_distribution(n);
  }

  // <x, y> = sum_j x_j - 2 * (sum of x_j over the -1 coordinates of y),
  // with the second sum split into two table lookups.
  long long total = 0;
  for (auto v : x) total += v;
  const int low_bits = std::min(n, kSplit);
  const int high_bits = n - low_bits;
  std::vector<long long> low(std::size_t{1} << low_bits, 0);
  std::vector<long long> high(std::size_t{1} << high_bits, 0);
  for (std::size_t m = 1; m < low.size(); ++m) {
    const int j = std::countr_zero(m);
    low[m] = low[m & (m - 1)] + x[static_cast<std::size_t>(j)];
  }
  for (std::size_t m = 1; m < high.size(); ++m) {
    const int j = std::countr_zero(m);
    high[m] = high[m & (m - 1)] + x[static_cast<std::size_t>(low_bits + j)];
  }
  const std::uint32_t low_mask = (std::uint32_t{1} << low_bits) - 1;

  std::vector<std::uint64_t> hist(static_cast<std::size_t>(2 * reach + 1), 0);
  for (auto y : members) {
    const long long k = total - 2 * (low[y & low_mask] + high[y >> low_bits]);
    ++hist[static_cast<std::size_t>(k + reach)];
  }
  return from_histogram(-reach, hist);
}

IntDistribution pair_distribution(const VertexSet& A, const VertexSet& B, PairMethod method,
                                  unsigned jobs) {
  const int n = A.dimension();
  check_same_dimension(n, B.dimension(), "pair_distribution");
  if (n > kExhaustiveCap) {
    throw InfeasibleError("pair_distribution: dimension " + std::to_string(n) +
                          " exceeds the exhaustive cap n=" + std::to_string(kExhaustiveCap));
  }

  if (method == PairMethod::Auto && (A.kind() == SetKind::Cube || B.kind() == SetKind::Cube)) {
    // For fixed y, x o y runs over the whole cube as x does (and vice versa).
    const BigInt& other = A.kind() == SetKind::Cube ? B.size() : A.size();
    std::vector<BigInt> by_weight(static_cast<std::size_t>(n + 1));
    for (int w = 0; w <= n; ++w) {
      by_weight[w] = other * binomial(static_cast<unsigned>(n), static_cast<unsigned>(w));
    }
    return from_weight_histogram(n, by_weight);
  }

  const auto xs = A.members();
  const auto ys = B.members();
  const std::size_t chunk = 256;
  const std::size_t chunks = (xs.size() + chunk - 1) / chunk;
  std::vector<std::vector<std::uint64_t>> partial(chunks, std::vector<std::uint64_t>(n + 1, 0));
  parallel_chunks(xs.size(), chunk, jobs, [&](std::size_t begin, std::size_t end, std::size_t c) {
    auto& h = partial[c];
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint32_t x = xs[i];
      for (auto y : ys) ++h[static_cast<std::size_t>(std::popcount(x ^ y))];
    }
  });
  std::vector<BigInt> by_weight(static_cast<std::size_t>(n + 1));
  for (const auto& h : partial) {
    for (int w = 0; w <= n; ++w) by_weight[w] += h[w];
  }
  return from_weight_histogram(n, by_weight);
}

Rational concentration_probability(const IntDistribution& d) {
  BigInt best = 0;
  for (const auto& c : d.counts()) best = std::max(best, c);
  return Rational(best, d.total());
}

Rational smoothness_gap(const IntDistribution& d, long long step) {
  if (step < 1) throw ValidationError("smoothness_gap: step must be positive");
  BigInt best = 0;
  for (long long k = d.k_min() - step; k <= d.k_max(); ++k) {
    BigInt diff = d.count(k) - d.count(k + step);
    if (diff < 0) diff = -diff;
    best = std::max(best, diff);
  }
  return Rational(best, d.total());
}

Rational interval_probability(const IntDistribution& d, long long radius) {
  if (radius < 0) throw ValidationError("interval_probability: radius must be nonnegative");
  BigInt mass = 0;
  const long long lo = std::max(-radius, d.k_min());
  const long long hi = std::min(radius, d.k_max());
  for (long long k = lo; k <= hi; ++k) mass += d.count(k);
  return Rational(mass, d.total());
}

std::vector<BigInt> slice_intersection_profile(const SignVector& a, const VertexSet& B) {
  const int n = B.dimension();
  check_same_dimension(static_cast<int>(a.size()), n, "slice_intersection_profile");
  const auto members = B.members();
  const auto am = static_cast<std::uint32_t>(a.mask());
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(n + 1), 0);
  for (auto b : members) ++hist[static_cast<std::size_t>(std::popcount(am ^ b))];
  return {hist.begin(), hist.end()};
}

}  // namespace anticonc
