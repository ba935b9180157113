#pragma once

// Shared numeric types, error hierarchy, seeded randomness and the
// deterministic chunked worker pool used by every module.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace anticonc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Integer direction vector x in Z^n.
using Direction = std::vector<long long>;

inline constexpr int kExhaustiveCap = 24;
inline constexpr const char* kVersion = "0.1.0";

/// Invalid input: bad parameters, malformed specs, dimension mismatches.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input is valid but the requested exact computation is too large.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// splitmix64 finalizer; derives independent substream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream = 0) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound).
  std::uint64_t below(std::uint64_t bound) {
    std::uniform_int_distribution<std::uint64_t> dist(0, bound - 1);
    return dist(engine_);
  }

  bool coin() { return (engine_() >> 63) != 0; }

  /// Uniform real in [0, 1).
  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(engine_); }

  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }

  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline unsigned effective_jobs(unsigned jobs) {
  if (jobs == 0) {
    jobs = std::max(1u, std::thread::hardware_concurrency());
  }
  return jobs;
}

/// Runs body(begin, end, chunk) over [0, count) split into fixed chunks.
/// Chunk boundaries depend only on count and chunk_size, so any merge that
/// is order-independent (integer addition) or ordered by chunk index gives
/// results independent of the worker count.
template <class Body>
void parallel_chunks(std::size_t count, std::size_t chunk_size, unsigned jobs, Body&& body) {
  if (count == 0) return;
  chunk_size = std::max<std::size_t>(1, chunk_size);
  const std::size_t chunks = (count + chunk_size - 1) / chunk_size;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(effective_jobs(jobs), chunks));
  auto run_chunk = [&](std::size_t c) {
    const std::size_t begin = c * chunk_size;
    body(begin, std::min(count, begin + chunk_size), c);
  };
  if (workers <= 1) {
    for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t c = w; c < chunks; c += workers) run_chunk(c);
    });
  }
}

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

inline BigInt binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
  }
  return r;
}

/// log2 of a positive big integer, accurate to double precision.
inline double log2_big(const BigInt& v) {
  const unsigned msb = boost::multiprecision::msb(v);
  if (msb < 1000) return std::log2(v.convert_to<double>());
  const BigInt top = v >> (msb - 60);
  return std::log2(top.convert_to<double>()) + static_cast<double>(msb - 60);
}

}  // namespace anticonc
