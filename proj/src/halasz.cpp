#include "anticonc/halasz.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <map>
#include <unordered_map>
#include <unordered_set>

namespace anticonc {

namespace {

constexpr double kBruteForceLimit = 1e9;

std::vector<long long> signed_values(std::span<const long long> d) {
  std::vector<long long> v;
  v.reserve(2 * d.size());
  for (auto x : d) {
    v.push_back(x);
    v.push_back(-x);
  }
  return v;
}

// Number of ordered tuples of `depth` entries of `values` with the given sum,
// the last entry resolved through a value-count table.
std::uint64_t count_tuples(const std::vector<long long>& values,
                           const std::unordered_map<long long, std::uint64_t>& tally, int depth,
                           long long partial) {
  if (depth == 1) {
    const auto it = tally.find(-partial);
    return it == tally.end() ? 0 : it->second;
  }
  std::uint64_t total = 0;
  for (auto v : values) total += count_tuples(values, tally, depth - 1, partial + v);
  return total;
}

// Sum over values of (#ordered pairs with that value)^2.
BigInt pair_collisions(const std::vector<long long>& values) {
  std::map<long long, std::uint64_t> sums;
  for (auto a : values) {
    for (auto b : values) ++sums[a + b];
  }
  BigInt total = 0;
  for (const auto& [s, c] : sums) total += BigInt(c) * c;
  return total;
}

}  // namespace

DifferenceProfile::DifferenceProfile(std::vector<long long> d) : d_(std::move(d)) {
  std::unordered_set<long long> seen;
  all_distinct_ = true;
  for (std::size_t j = 0; j < d_.size(); ++j) {
    if (d_[j] == 0) throw ValidationError("difference " + std::to_string(j) + " is zero");
    if (!seen.insert(std::llabs(d_[j])).second) all_distinct_ = false;
  }
  weak_sidon_ = weak_sidon_check(d_).holds;
}

long long DifferenceProfile::max_abs() const {
  long long m = 0;
  for (auto v : d_) m = std::max(m, std::llabs(v));
  return m;
}

BigInt count_solutions_r_brute(const DifferenceProfile& d, int ell) {
  if (ell < 1) throw ValidationError("count_solutions_r: ell must be positive");
  const double tuples = std::pow(2.0 * d.size(), 2.0 * ell);
  if (tuples > kBruteForceLimit) throw InfeasibleError("count_solutions_r: brute force too large");
  if (d.size() == 0) return 0;
  const auto values = signed_values(d.values());
  std::unordered_map<long long, std::uint64_t> tally;
  for (auto v : values) ++tally[v];
  return count_tuples(values, tally, 2 * ell, 0);
}

BigInt count_solutions_r_poly(const DifferenceProfile& d, int ell) {
  if (ell < 1) throw ValidationError("count_solutions_r: ell must be positive");
  if (d.size() == 0) return 0;
  const long long M = d.max_abs();
  const double width = 2.0 * static_cast<double>(ell) * static_cast<double>(M) + 1.0;
  if (width > 1e7) throw InfeasibleError("count_solutions_r: polynomial degree too large");
  const auto values = signed_values(d.values());

  // coefficients of (sum_j z^{d_j} + z^{-d_j})^k, indexed by exponent + k M
  std::vector<BigInt> poly{1};
  for (int k = 1; k <= ell; ++k) {
    std::vector<BigInt> next(static_cast<std::size_t>(2 * k * M + 1));
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (poly[i] == 0) continue;
      for (auto v : values) next[static_cast<std::size_t>(static_cast<long long>(i) + M + v)] += poly[i];
    }
    poly = std::move(next);
  }
  // The constant term of P^{2 ell} is sum_s c(s) c(-s), and c is symmetric.
  BigInt r = 0;
  for (const auto& c : poly) r += c * c;
  return r;
}

BigInt count_solutions_r(const DifferenceProfile& d, int ell) {
  if (ell < 1) throw ValidationError("count_solutions_r: ell must be positive");
  if (std::pow(2.0 * d.size(), 2.0 * ell) <= kBruteForceLimit) return count_solutions_r_brute(d, ell);
  return count_solutions_r_poly(d, ell);
}

SidonResult sidon_check(std::span<const long long> S) {
  const std::vector<long long> values(S.begin(), S.end());
  SidonResult r;
  r.count = pair_collisions(values);
  const auto n = static_cast<long long>(values.size());
  r.holds = r.count == BigInt(2 * n * n - n);
  return r;
}

SidonResult weak_sidon_check(std::span<const long long> S) {
  SidonResult r;
  r.count = pair_collisions(signed_values(S));
  const auto n = static_cast<long long>(S.size());
  r.holds = r.count <= BigInt(100 * n * n);
  return r;
}

std::vector<long long> mian_chowla(int n) {
  if (n < 1 || n > 200) throw ValidationError("mian_chowla: n must lie in [1, 200]");
  std::vector<long long> seq;
  std::unordered_set<long long> sums;
  for (long long cand = 1; static_cast<int>(seq.size()) < n; ++cand) {
    bool ok = !sums.contains(2 * cand);
    for (std::size_t i = 0; ok && i < seq.size(); ++i) ok = !sums.contains(seq[i] + cand);
    if (!ok) continue;
    for (auto s : seq) sums.insert(s + cand);
    sums.insert(2 * cand);
    seq.push_back(cand);
  }
  return seq;
}

double D_theta(std::span<const long long> G, double theta) {
  double sum = 0.0;
  for (auto d : G) {
    // reduce theta * d mod 1 before scaling so large d keeps full precision
    const double t = theta * static_cast<double>(d);
    const double s = std::sin(kTwoPi * (t - std::floor(t)));
    sum += s * s;
  }
  return sum;
}

double level_set_probability(std::span<const long long> G, double rho, std::size_t nodes) {
  if (nodes < (1u << 14)) throw ValidationError("level_set_probability: nodes must be at least 2^14");
  std::size_t hits = 0;
  for (std::size_t m = 0; m < nodes; ++m) {
    if (D_theta(G, static_cast<double>(m) / static_cast<double>(nodes)) <= rho) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(nodes);
}

double level_set_claim_bound(const BigInt& r_ell, int ell, double lambda, int n, double rho) {
  const double log_r = log2_big(r_ell) * std::log(2.0);
  return 4.0 * std::exp(log_r - (2.0 * ell + 0.5) * std::log(lambda * n)) * std::sqrt(rho);
}

MomentCheck moment_check(std::span<const long long> G, int ell, std::size_t nodes) {
  if (ell < 1) throw ValidationError("moment_check: ell must be positive");
  long long M = 0;
  for (auto d : G) M = std::max(M, std::llabs(d));
  if (nodes <= static_cast<std::size_t>(4 * ell * M)) {
    throw ValidationError("moment_check: nodes must exceed the trigonometric degree 4 ell max|d|");
  }
  MomentCheck out;
  if (G.empty()) return out;
  const double size = static_cast<double>(G.size());
  double sum = 0.0;
  for (std::size_t m = 0; m < nodes; ++m) {
    const double v = size - 2.0 * D_theta(G, static_cast<double>(m) / static_cast<double>(nodes));
    sum += std::pow(v, 2 * ell);
  }
  out.moment = sum / static_cast<double>(nodes);
  const DifferenceProfile profile(std::vector<long long>(G.begin(), G.end()));
  out.bound = count_solutions_r(profile, ell).convert_to<double>() / std::exp2(2.0 * ell);
  return out;
}

std::vector<double> geometric_nu_grid(int count) {
  std::vector<double> grid;
  for (int i = 0; i < count; ++i) grid.push_back(std::exp2(-static_cast<double>(i)));
  return grid;
}

double halasz_R_term(const BigInt& r_ell, int ell, int n, double C) {
  const double log_term = ell * std::log(C) + log2_big(r_ell) * std::log(2.0) - (2.0 * ell + 0.5) * std::log(n);
  return std::exp(log_term) + std::exp(-n / C);
}

HalaszR halasz_R(const DifferenceProfile& d, const HalaszParams& params) {
  if (!(params.C > 0.0) || !std::isfinite(params.C)) throw ValidationError("halasz_R: C must be positive");
  if (params.ell_max < 1) throw ValidationError("halasz_R: ell_max must be positive");
  if (d.size() == 0) throw ValidationError("halasz_R: empty difference profile");
  HalaszR out;
  for (int ell = 1; ell <= params.ell_max; ++ell) {
    out.r.push_back(count_solutions_r(d, ell));
    out.R_ell.push_back(halasz_R_term(out.r.back(), ell, d.size(), params.C));
    if (ell == 1 || out.R_ell.back() < out.R) {
      out.R = out.R_ell.back();
      out.argmin_ell = ell;
    }
  }
  return out;
}

MuC mu_C_from_R(double R, int n, double C, std::span<const double> nu_grid) {
  if (nu_grid.empty()) throw ValidationError("mu_C: nu grid is empty");
  MuC out;
  for (auto nu : nu_grid) {
    if (!(nu > 0.0 && nu <= 1.0)) throw ValidationError("mu_C: nu grid values must lie in (0, 1]");
    const double bracket = 3.0 * std::exp(-nu * n / C) + R / (50.0 * std::sqrt(nu));
    if (bracket > 1.0) continue;
    const double mu = std::pow(bracket, 1.0 / ((1.0 + nu) * (1.0 + nu)));
    if (!out.nu_star || mu < out.mu) {
      out.mu = mu;
      out.nu_star = nu;
    }
  }
  out.mu = std::clamp(out.mu, 0.0, 1.0);
  return out;
}

MuC mu_C(const DifferenceProfile& d, const HalaszParams& params) {
  return mu_C_from_R(halasz_R(d, params).R, d.size(), params.C, params.nu_grid);
}

ConstantCheck nu_product_bound(const Direction& x, const VertexSet& B, Angle eta, double nu, double kappa,
                               double c0) {
  if (!(nu > 0.0 && nu <= 1.0) || !(c0 > 0.0 && c0 <= 1.0)) {
    throw ValidationError("nu_product_bound: nu and c0 must lie in (0, 1]");
  }
  const auto f = characteristic_function(x, B, Angle::turns(eta.radian() / kTwoPi));
  ConstantCheck out;
  out.lhs = std::pow(std::abs(f), 1.0 + nu);
  out.rhs = prefix_product_expectation(x, B, eta, kappa, c0 * nu);
  out.max_feasible = largest_feasible(
      [&](double g) { return out.lhs <= prefix_product_expectation(x, B, eta, kappa, g * nu) + 1e-12; });
  return out;
}

ConstantCheck nu_average_bound(const TwoCube& A, std::span<const std::uint64_t> support, const VertexSet& B,
                               const SignVector& y, Angle eta, double nu, double kappa, double c0, double c) {
  if (!(nu > 0.0 && nu <= 1.0) || !(c0 > 0.0 && c0 <= 1.0)) {
    throw ValidationError("nu_average_bound: nu and c0 must lie in (0, 1]");
  }
  const int n = A.dimension();
  if (n != B.dimension()) throw ValidationError("nu_average_bound: dimension mismatch");
  std::vector<std::uint64_t> xs(support.begin(), support.end());
  if (xs.empty()) {
    if (n > 20) throw InfeasibleError("nu_average_bound: two-cube too large to enumerate");
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) xs.push_back(m);
  }
  for (auto m : xs) {
    if (n < 64 && (m >> n) != 0) throw ValidationError("nu_average_bound: support mask out of range");
  }

  // Conditional choice counts given X_{>j}.
  std::map<std::pair<int, std::uint64_t>, std::array<std::uint64_t, 2>> cond;
  for (auto m : xs) {
    for (int j = 0; j < n; ++j) ++cond[{j, j + 1 >= 64 ? 0 : m >> (j + 1)}][(m >> j) & 1U];
  }

  const double eta_r = eta.radian();
  const auto& d = A.differences();
  std::vector<double> prods;
  std::vector<double> g_sums;
  for (auto m : xs) {
    const Direction x = A.member(m);
    const auto prof = witness_profile(B, y, x, eta, kappa);
    double prod = 1.0;
    double g_sum = 0.0;
    for (int j : prof.J) {
      const double s = std::sin(prof.phi[j] + static_cast<double>(x[j]) * eta_r);
      prod *= 1.0 - c0 * nu * s * s;
      const auto& cnt = cond[{j, j + 1 >= 64 ? 0 : m >> (j + 1)}];
      const double mu_j = static_cast<double>(std::min(cnt[0], cnt[1])) / static_cast<double>(cnt[0] + cnt[1]);
      if (mu_j >= kappa) {
        const double sd = std::sin(static_cast<double>(d[j]) * eta_r);
        g_sum += sd * sd;
      }
    }
    prods.push_back(prod);
    g_sums.push_back(g_sum);
  }

  double mean_prod = 0.0;
  for (auto p : prods) mean_prod += p;
  mean_prod /= static_cast<double>(xs.size());
  auto rhs_for = [&](double cc) {
    double s = 0.0;
    for (auto g : g_sums) s += std::exp(-cc * nu * g);
    return s / static_cast<double>(xs.size());
  };

  ConstantCheck out;
  out.lhs = std::pow(mean_prod, 1.0 + nu);
  out.rhs = rhs_for(c);
  out.max_feasible = largest_feasible([&](double g) { return out.lhs <= rhs_for(g) + 1e-12; });
  return out;
}

double strict_convexity_phi(double xi, double p, double nu) {
  if (!(xi >= 0.0 && xi <= 0.5) || !(p >= 0.0 && p <= 1.0) || !(nu >= 0.0 && nu <= 1.0)) {
    throw ValidationError("strict_convexity_phi: argument outside xi in [0,1/2], p in [0,1], nu in [0,1]");
  }
  // With q = p + (1-p) xi and a^{1+nu} = a + a expm1(nu ln a), the linear
  // terms cancel exactly, which keeps Phi / nu accurate for tiny nu.
  const double q = p + (1.0 - p) * xi;
  const double first = xi == 0.0 ? 0.0 : (1.0 - p) * xi * std::expm1(nu * std::log(xi));
  const double second = q == 0.0 ? 0.0 : q * std::expm1(nu * std::log(q));
  return first - second;
}

Rational strict_convexity_phi_exact(const Rational& xi, const Rational& p, unsigned nu) {
  if (xi < 0 || xi > Rational(1, 2) || p < 0 || p > 1) {
    throw ValidationError("strict_convexity_phi: argument outside xi in [0,1/2], p in [0,1]");
  }
  if (nu > 1) throw ValidationError("strict_convexity_phi_exact: nu must be 0 or 1");
  if (nu == 0) return 0;
  const Rational q = p + (1 - p) * xi;
  return (p + (1 - p) * xi * xi) - q * q;
}

double c1_from_grid(double kappa, std::span<const double> nu_grid) {
  if (!(kappa > 0.0 && kappa <= 0.5)) throw ValidationError("c1_from_grid: kappa must lie in (0, 1/2]");
  if (nu_grid.empty()) throw ValidationError("c1_from_grid: nu grid is empty");
  double c1 = INFINITY;
  for (auto nu : nu_grid) {
    if (!(nu > 0.0 && nu <= 1.0)) throw ValidationError("c1_from_grid: nu grid values must lie in (0, 1]");
    c1 = std::min(c1, strict_convexity_phi(0.5, kappa, nu) / nu);
  }
  return c1;
}

}  // namespace anticonc
