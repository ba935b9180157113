#pragma once

// Test-side reference implementations. They work on plain int vectors and
// nested loops, share no code with the library beyond its public types, and
// are deliberately slow and obvious.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

using Vec = std::vector<int>;

/// All of {+1,-1}^n, coordinate j of the i-th vector is -1 iff bit j of i is set.
inline std::vector<Vec> cube(int n) {
  std::vector<Vec> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    Vec v(n);
    for (int j = 0; j < n; ++j) v[j] = ((m >> j) & 1U) ? -1 : 1;
    out.push_back(v);
  }
  return out;
}

inline long long dot(const std::vector<long long>& x, const Vec& y) {
  long long s = 0;
  for (std::size_t j = 0; j < y.size(); ++j) s += x[j] * y[j];
  return s;
}

inline long long dot(const Vec& x, const Vec& y) {
  long long s = 0;
  for (std::size_t j = 0; j < y.size(); ++j) s += static_cast<long long>(x[j]) * y[j];
  return s;
}

/// k -> #{y in B : <x, y> = k}
inline std::map<long long, long long> histogram(const std::vector<long long>& x, const std::vector<Vec>& B) {
  std::map<long long, long long> h;
  for (const auto& y : B) ++h[dot(x, y)];
  return h;
}

inline std::map<long long, long long> pair_histogram(const std::vector<Vec>& A, const std::vector<Vec>& B) {
  std::map<long long, long long> h;
  for (const auto& x : A) {
    for (const auto& y : B) ++h[dot(x, y)];
  }
  return h;
}

inline double binom(int n, int k) {
  double r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// |E_Y exp(i eta <x,Y>)| directly from the member list.
inline std::complex<double> char_fn(const std::vector<long long>& x, const std::vector<Vec>& B, double eta) {
  std::complex<double> s = 0;
  for (const auto& y : B) s += std::polar(1.0, eta * static_cast<double>(dot(x, y)));
  return s / static_cast<double>(B.size());
}

/// gamma_j(y) as (min count, prefix count), 0-based j.
inline std::pair<long long, long long> gamma(const std::vector<Vec>& B, const Vec& y, int j) {
  long long plus = 0;
  long long minus = 0;
  for (const auto& b : B) {
    if (!std::equal(b.begin(), b.begin() + j, y.begin())) continue;
    (b[j] == 1 ? plus : minus) += 1;
  }
  return {std::min(plus, minus), plus + minus};
}

/// phi_j(x, y): half the argument of Z_+ conj(Z_-), Z_eps the conditional
/// mean of exp(i eta <x_{>j}, Y_{>j}>) given Y_{<j} = y_{<j}, Y_j = eps.
inline double phi(const std::vector<Vec>& B, const Vec& y, const std::vector<long long>& x, double eta, int j) {
  const int n = static_cast<int>(y.size());
  if (j == n - 1) return 0.0;
  std::complex<double> z[2] = {0, 0};
  long long c[2] = {0, 0};
  for (const auto& b : B) {
    if (!std::equal(b.begin(), b.begin() + j, y.begin())) continue;
    long long s = 0;
    for (int l = j + 1; l < n; ++l) s += x[l] * b[l];
    const int side = b[j] == 1 ? 0 : 1;
    z[side] += std::polar(1.0, eta * static_cast<double>(s));
    ++c[side];
  }
  if (c[0] == 0 || c[1] == 0) return 0.0;
  const auto p = (z[0] / static_cast<double>(c[0])) * std::conj(z[1] / static_cast<double>(c[1]));
  if (std::abs(p) < 1e-15) return 0.0;
  return std::arg(p) / 2.0;
}

/// E_Y prod_{j : gamma_j >= kappa} (1 - w_j sin^2(phi_j + x_j eta)), w_j = gamma_j if weight < 0.
inline double product_expectation(const std::vector<Vec>& B, const std::vector<long long>& x, double eta,
                                  double kappa, double weight) {
  double total = 0;
  for (const auto& y : B) {
    double prod = 1;
    for (int j = 0; j < static_cast<int>(y.size()); ++j) {
      const auto [mn, cnt] = gamma(B, y, j);
      const double g = static_cast<double>(mn) / static_cast<double>(cnt);
      if (kappa > 0 && g < kappa) continue;
      const double s = std::sin(phi(B, y, x, eta, j) + static_cast<double>(x[j]) * eta);
      prod *= 1.0 - (weight < 0 ? g : weight) * s * s;
    }
    total += prod;
  }
  return total / static_cast<double>(B.size());
}

/// r_ell by enumerating every (eps, j) tuple.
inline long long r_ell(const std::vector<long long>& d, int ell) {
  const int n = static_cast<int>(d.size());
  const int len = 2 * ell;
  std::vector<int> digit(len, 0);  // each digit in [0, 2n): index and sign
  long long count = 0;
  while (true) {
    long long s = 0;
    for (int i = 0; i < len; ++i) s += (digit[i] % 2 == 0 ? 1 : -1) * d[digit[i] / 2];
    if (s == 0) ++count;
    int i = 0;
    while (i < len && ++digit[i] == 2 * n) digit[i++] = 0;
    if (i == len) break;
  }
  return count;
}

/// Ordered quadruples with s1 + s2 = s3 + s4.
inline long long sidon_quadruples(const std::vector<long long>& S) {
  long long c = 0;
  for (auto a : S)
    for (auto b : S)
      for (auto e : S)
        for (auto f : S) c += (a + b == e + f);
  return c;
}

/// Signed quadruples with e1 s1 + e2 s2 = e3 s3 + e4 s4.
inline long long signed_quadruples(const std::vector<long long>& S) {
  long long c = 0;
  for (auto a : S)
    for (auto b : S)
      for (auto e : S)
        for (auto f : S)
          for (int sg = 0; sg < 16; ++sg) {
            const long long v = ((sg & 1) ? -a : a) + ((sg & 2) ? -b : b) - ((sg & 4) ? -e : e) - ((sg & 8) ? -f : f);
            c += (v == 0);
          }
  return c;
}

/// Greedy Sidon sequence by checking every pair sum from scratch.
inline std::vector<long long> greedy_sidon(int n) {
  std::vector<long long> s;
  for (long long c = 1; static_cast<int>(s.size()) < n; ++c) {
    auto t = s;
    t.push_back(c);
    std::vector<long long> sums;
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t j = i; j < t.size(); ++j) sums.push_back(t[i] + t[j]);
    std::sort(sums.begin(), sums.end());
    if (std::adjacent_find(sums.begin(), sums.end()) == sums.end()) s = t;
  }
  return s;
}

/// Pearson chi-square statistic of observed counts against equal expectations.
inline double chi_square_uniform(const std::vector<long long>& observed) {
  const double total = std::accumulate(observed.begin(), observed.end(), 0.0);
  const double e = total / static_cast<double>(observed.size());
  double s = 0;
  for (auto o : observed) s += (o - e) * (o - e) / e;
  return s;
}

}  // namespace oracle
