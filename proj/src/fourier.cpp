#include "anticonc/fourier.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <memory>
#include <mutex>

#include <fftw3.h>

namespace anticonc {

namespace {

// fftw planner calls are not thread-safe; execution is.
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};
using FftwBuffer = std::unique_ptr<fftw_complex, FftwFree>;

double frac(double v) { return v - std::floor(v); }

std::complex<double> unit_phase(double turns) { return std::polar(1.0, kTwoPi * frac(turns)); }

long long direction_reach(const Direction& x) {
  long long r = 0;
  for (auto v : x) r += std::llabs(v);
  return r;
}

long long distribution_reach(const IntDistribution& d) {
  return std::max(std::llabs(d.k_min()), std::llabs(d.k_max()));
}

void check_nodes(std::size_t nodes, long long reach, const char* op) {
  const auto needed = static_cast<unsigned long long>(4 * reach + 4);
  if (nodes < needed) {
    throw ValidationError(std::string(op) + ": insufficient nodes (" + std::to_string(nodes) + " < " +
                          std::to_string(needed) + ")");
  }
  if (nodes % 2 != 0) throw ValidationError(std::string(op) + ": nodes must be even");
}

// Mean of weight(m) * |f(m/N)| over the full grid and over the even nodes.
template <class Weight>
QuadratureEstimate grid_mean(const IntDistribution& d, std::size_t nodes, Weight weight) {
  const auto f = characteristic_grid(d, nodes);
  double full = 0.0;
  double even = 0.0;
  for (std::size_t m = 0; m < nodes; ++m) {
    const double g = weight(m) * std::abs(f[m]);
    full += g;
    if (m % 2 == 0) even += g;
  }
  full /= static_cast<double>(nodes);
  even /= static_cast<double>(nodes / 2);
  return {full, std::abs(full - even)};
}

}  // namespace

Angle Angle::turns(double theta) {
  if (!std::isfinite(theta)) throw ValidationError("angle must be finite");
  const double t = frac(theta);
  return Angle(t, kTwoPi * t);
}

Angle Angle::radians(double eta) {
  if (!std::isfinite(eta)) throw ValidationError("angle must be finite");
  return Angle(frac(eta / kTwoPi), eta);
}

std::complex<double> characteristic_function(const IntDistribution& d, Angle theta) {
  const auto p = d.probabilities();
  std::complex<double> sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long long k = d.k_min() + static_cast<long long>(i);
    sum += p[i] * unit_phase(theta.turn() * static_cast<double>(k));
  }
  return sum;
}

std::complex<double> characteristic_function(const Direction& x, const VertexSet& B, Angle theta) {
  return characteristic_function(direction_distribution(x, B), theta);
}

std::vector<std::complex<double>> characteristic_grid(const IntDistribution& d, std::size_t nodes) {
  if (nodes == 0 || static_cast<unsigned long long>(d.k_max() - d.k_min()) >= nodes) {
    throw ValidationError("characteristic_grid: nodes must exceed the support width");
  }
  FftwBuffer buf(static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * nodes)));
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_dft_1d(static_cast<int>(nodes), buf.get(), buf.get(), FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  for (std::size_t i = 0; i < nodes; ++i) buf.get()[i][0] = buf.get()[i][1] = 0.0;
  const auto p = d.probabilities();
  const auto N = static_cast<long long>(nodes);
  for (std::size_t i = 0; i < p.size(); ++i) {
    const long long k = d.k_min() + static_cast<long long>(i);
    buf.get()[static_cast<std::size_t>(((k % N) + N) % N)][0] += p[i];
  }
  fftw_execute(plan);
  std::vector<std::complex<double>> out(nodes);
  for (std::size_t m = 0; m < nodes; ++m) out[m] = {buf.get()[m][0], buf.get()[m][1]};
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  return out;
}

QuadratureEstimate star_bound(const IntDistribution& d, std::size_t nodes) {
  check_nodes(nodes, distribution_reach(d), "star_bound");
  return grid_mean(d, nodes, [](std::size_t) { return 1.0; });
}

QuadratureEstimate star_bound(const Direction& x, const VertexSet& B, std::size_t nodes) {
  check_nodes(nodes, direction_reach(x), "star_bound");
  return star_bound(direction_distribution(x, B), nodes);
}

QuadratureEstimate smoothness_rhs(const IntDistribution& d, std::size_t nodes) {
  check_nodes(nodes, distribution_reach(d), "smoothness_rhs");
  const double N = static_cast<double>(nodes);
  return grid_mean(d, nodes, [N](std::size_t m) {
    return 2.0 * std::abs(std::sin(2.0 * kTwoPi * static_cast<double>(m) / N));
  });
}

QuadratureEstimate smoothness_rhs(const Direction& x, const VertexSet& B, std::size_t nodes) {
  check_nodes(nodes, direction_reach(x), "smoothness_rhs");
  return smoothness_rhs(direction_distribution(x, B), nodes);
}

double binary_entropy(double xi) {
  if (xi <= 0.0 || xi >= 1.0) return 0.0;
  return -xi * std::log2(xi) - (1.0 - xi) * std::log2(1.0 - xi);
}

EntropyParams solve_parameters(double lambda, std::optional<double> c_override) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw ValidationError("solve_parameters: lambda must lie in (0, 1]");
  }
  auto bisect = [](auto&& g, double lo, double hi) {
    // g increasing on [lo, hi], g(lo) < 0 <= g(hi)
    for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (g(mid) < 0.0 ? lo : hi) = mid;
    }
    return hi;
  };

  // xi = 1 / log2(1/kappa) on the increasing branch (0, 1/2] of H.
  const double xi = lambda == 1.0 ? 0.5 : bisect([&](double t) { return binary_entropy(t) - lambda; }, 0.0, 0.5);
  const double kappa = std::exp2(-1.0 / xi);
  const double tau = bisect([&](double t) { return t + binary_entropy(t) - lambda; }, 0.0, 2.0 / 3.0);

  EntropyParams p;
  p.lambda = lambda;
  p.kappa = kappa;
  p.tau = tau;
  p.c = c_override ? *c_override : std::min(kappa * tau / 8.0, lambda * std::log(2.0) / 2.0);
  if (!(p.c > 0.0)) throw ValidationError("solve_parameters: decay constant must be positive");

  const double r1 = std::abs(binary_entropy(1.0 / std::log2(1.0 / kappa)) - lambda);
  const double r2 = std::abs(tau + binary_entropy(tau) - lambda);
  if (r1 > 1e-12 || r2 > 1e-12) throw std::runtime_error("solve_parameters: bisection did not converge");
  return p;
}

SinGap sin_gap_lower_bound(Angle eta, long long u, long long v, std::size_t grid) {
  if (grid < 1000) throw ValidationError("sin_gap_lower_bound: grid must be at least 1000");
  const double e = eta.radian();
  const double pi = kTwoPi / 2.0;
  SinGap out;
  out.min_over_phi = 1.0;
  for (std::size_t i = 0; i < grid; ++i) {
    const double phi = pi * static_cast<double>(i) / static_cast<double>(grid);
    const double g = std::max(std::abs(std::sin(phi + e * static_cast<double>(u))),
                              std::abs(std::sin(phi + e * static_cast<double>(v))));
    out.min_over_phi = std::min(out.min_over_phi, g);
  }
  out.rhs = std::abs(std::sin(e * static_cast<double>(u - v))) / 2.0;
  return out;
}

CensusResult tech_census(const VertexSet& B, Angle theta, const EntropyParams& params, CensusMode mode,
                         unsigned jobs) {
  const int n = B.dimension();
  if (mode.exhaustive && n > 16) throw InfeasibleError("tech_census: exhaustive mode requires n <= 16");
  if (!mode.exhaustive && mode.count == 0) throw ValidationError("tech_census: sample count must be positive");
  const auto ys = B.members();

  const double s = std::sin(2.0 * kTwoPi * theta.turn());
  CensusResult result;
  result.threshold = 2.0 * std::exp(-params.c * n * s * s);

  // f_x(theta) = |B|^{-1} sum_w h_x(w) exp(2 pi i theta (n - 2w)), and only the
  // modulus matters, so the common factor exp(2 pi i theta n) is dropped.
  std::vector<std::complex<double>> phase(static_cast<std::size_t>(n + 1));
  for (int w = 0; w <= n; ++w) phase[w] = unit_phase(-2.0 * theta.turn() * w);
  const double inv_size = 1.0 / static_cast<double>(ys.size());

  const std::uint64_t tested = mode.exhaustive ? (std::uint64_t{1} << n) : mode.count;
  const std::size_t chunk = 64;
  std::vector<std::uint64_t> partial((tested + chunk - 1) / chunk, 0);
  parallel_chunks(tested, chunk, jobs, [&](std::size_t begin, std::size_t end, std::size_t c) {
    std::vector<std::uint64_t> hist(static_cast<std::size_t>(n + 1));
    for (std::size_t i = begin; i < end; ++i) {
      std::uint32_t x = static_cast<std::uint32_t>(i);
      if (!mode.exhaustive) {
        Rng rng(mix_seed(mode.seed, i));
        x = static_cast<std::uint32_t>(rng.next() & ((std::uint64_t{1} << n) - 1));
      }
      std::fill(hist.begin(), hist.end(), 0);
      for (auto y : ys) ++hist[static_cast<std::size_t>(std::popcount(x ^ y))];
      std::complex<double> f = 0.0;
      for (int w = 0; w <= n; ++w) f += static_cast<double>(hist[w]) * phase[w];
      if (std::abs(f) * inv_size >= result.threshold) ++partial[c];
    }
  });
  for (auto p : partial) result.violations += p;
  result.tested = tested;
  return result;
}

}  // namespace anticonc
