// gamma_j, phi_j, J and G, and the prefix-tree expectations built from them.
//
// Members of B are kept in "prefix order": sorted by (y_0, y_1, ...), so the
// members sharing a prefix y_{<j} form a contiguous range, and within it those
// with y_j = +1 (bit clear) come before those with y_j = -1.

#include <algorithm>
#include <bit>
#include <cmath>

#include "anticonc/fourier.hpp"

namespace anticonc {

namespace {

std::uint32_t reverse_bits(std::uint32_t m, int n) {
  std::uint32_t r = 0;
  for (int j = 0; j < n; ++j) r |= ((m >> j) & 1U) << (n - 1 - j);
  return r;
}

class PrefixTree {
 public:
  PrefixTree(const VertexSet& B, const Direction& x, double eta)
      : n_(B.dimension()), x_(x), eta_(eta) {
    if (static_cast<int>(x.size()) != n_) throw ValidationError("direction and set dimensions differ");
    const auto members = B.members();
    order_.assign(members.begin(), members.end());
    std::sort(order_.begin(), order_.end(), [this](std::uint32_t a, std::uint32_t b) {
      return reverse_bits(a, n_) < reverse_bits(b, n_);
    });
    // suffix_total_[j] = sum_{l > j} x_l
    suffix_total_.assign(static_cast<std::size_t>(n_ + 1), 0);
    for (int j = n_ - 1; j >= 1; --j) suffix_total_[j - 1] = suffix_total_[j] + x_[j];
    low_bits_ = std::min(n_, 12);
    low_.assign(std::size_t{1} << low_bits_, 0);
    high_.assign(std::size_t{1} << (n_ - low_bits_), 0);
    for (std::size_t m = 1; m < low_.size(); ++m) {
      low_[m] = low_[m & (m - 1)] + x_[static_cast<std::size_t>(std::countr_zero(m))];
    }
    for (std::size_t m = 1; m < high_.size(); ++m) {
      high_[m] = high_[m & (m - 1)] + x_[static_cast<std::size_t>(low_bits_ + std::countr_zero(m))];
    }
  }

  int n() const { return n_; }
  std::size_t size() const { return order_.size(); }
  std::uint32_t member(std::size_t i) const { return order_[i]; }

  struct Node {
    std::size_t mid = 0;      // first index with y_j = -1
    std::size_t plus = 0;     // members with y_j = +1
    std::size_t minus = 0;    // members with y_j = -1
    double gamma = 0.0;
    double phi = 0.0;
    bool degenerate = false;  // gamma > 0 but the phase product vanished
  };

  /// Statistics of coordinate j over the range [lo, hi) sharing y_{<j}.
  Node node(int j, std::size_t lo, std::size_t hi) const {
    Node s;
    const std::uint32_t bit = std::uint32_t{1} << j;
    s.mid = static_cast<std::size_t>(
        std::partition_point(order_.begin() + static_cast<std::ptrdiff_t>(lo),
                             order_.begin() + static_cast<std::ptrdiff_t>(hi),
                             [bit](std::uint32_t m) { return (m & bit) == 0; }) -
        order_.begin());
    s.plus = s.mid - lo;
    s.minus = hi - s.mid;
    s.gamma = static_cast<double>(std::min(s.plus, s.minus)) / static_cast<double>(hi - lo);
    if (s.plus == 0 || s.minus == 0) return s;  // gamma = 0: phi = 0 by convention
    if (j == n_ - 1) return s;                  // phi_n = 0
    const auto zp = suffix_mean(j, lo, s.mid);
    const auto zm = suffix_mean(j, s.mid, hi);
    const auto prod = zp * std::conj(zm);
    if (std::abs(prod) < 1e-15) {
      s.degenerate = true;
      return s;
    }
    s.phi = std::arg(prod) / 2.0;
    return s;
  }

  /// sin^2(phi_j + x_j eta)
  double sin2(int j, double phi) const {
    const double v = std::sin(phi + static_cast<double>(x_[j]) * eta_);
    return v * v;
  }

 private:
  // E[exp(i eta <x_{>j}, Y_{>j}>)] over members [lo, hi).
  std::complex<double> suffix_mean(int j, std::size_t lo, std::size_t hi) const {
    const std::uint32_t high_mask = j + 1 >= 32 ? 0 : ~((std::uint32_t{2} << j) - 1);
    const std::uint32_t low_mask = (std::uint32_t{1} << low_bits_) - 1;
    std::complex<double> sum = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const std::uint32_t m = order_[i] & high_mask;
      const long long neg = low_[m & low_mask] + high_[m >> low_bits_];
      const long long s = suffix_total_[j] - 2 * neg;
      sum += std::polar(1.0, eta_ * static_cast<double>(s));
    }
    return sum / static_cast<double>(hi - lo);
  }

  int n_;
  Direction x_;
  double eta_;
  std::vector<std::uint32_t> order_;
  std::vector<long long> suffix_total_;
  int low_bits_ = 0;
  std::vector<long long> low_;
  std::vector<long long> high_;
};

// Sum over members in [lo, hi) of prod_{l >= j, l in J} factor_l, where the
// factor is 1 - w sin^2(phi_l + x_l eta) and w = gamma_l when weight < 0.
double product_sum(const PrefixTree& t, int j, std::size_t lo, std::size_t hi, double kappa, double weight) {
  if (j == t.n()) return static_cast<double>(hi - lo);
  const auto s = t.node(j, lo, hi);
  double factor = 1.0;
  if (kappa <= 0.0 || s.gamma >= kappa) {
    const double w = weight < 0.0 ? s.gamma : weight;
    factor = 1.0 - w * t.sin2(j, s.phi);
  }
  double sum = 0.0;
  if (s.plus > 0) sum += product_sum(t, j + 1, lo, s.mid, kappa, weight);
  if (s.minus > 0) sum += product_sum(t, j + 1, s.mid, hi, kappa, weight);
  return factor * sum;
}

void j_size_walk(const PrefixTree& t, int j, std::size_t lo, std::size_t hi, double kappa, int in_j,
                 std::vector<std::uint64_t>& hist) {
  if (j == t.n()) {
    hist[static_cast<std::size_t>(in_j)] += hi - lo;
    return;
  }
  const auto s = t.node(j, lo, hi);
  const int next = in_j + (s.gamma >= kappa ? 1 : 0);
  if (s.plus > 0) j_size_walk(t, j + 1, lo, s.mid, kappa, next, hist);
  if (s.minus > 0) j_size_walk(t, j + 1, s.mid, hi, kappa, next, hist);
}

}  // namespace

WitnessProfile witness_profile(const VertexSet& B, const SignVector& y, const Direction& x, Angle eta,
                               double kappa) {
  if (static_cast<int>(y.size()) != B.dimension()) throw ValidationError("witness_profile: dimension mismatch");
  if (!B.contains(y)) throw ValidationError("witness_profile: y is not a member of B");
  const PrefixTree t(B, x, eta.radian());
  const int n = t.n();
  const auto ym = static_cast<std::uint32_t>(y.mask());
  const double g_threshold = std::pow(std::sin(2.0 * eta.radian()), 2) / 4.0;

  WitnessProfile p;
  std::size_t lo = 0;
  std::size_t hi = t.size();
  for (int j = 0; j < n; ++j) {
    const auto s = t.node(j, lo, hi);
    p.gamma.emplace_back(static_cast<long long>(std::min(s.plus, s.minus)), static_cast<long long>(hi - lo));
    p.phi.push_back(s.phi);
    p.phi_degenerate.push_back(s.degenerate);
    if (s.gamma >= kappa) {
      p.J.push_back(j);
      if (t.sin2(j, s.phi) >= g_threshold) p.G.push_back(j);
    }
    if ((ym >> j) & 1U) {
      lo = s.mid;
    } else {
      hi = s.mid;
    }
  }
  return p;
}

InequalitySides lemma_tech_check(const Direction& x, const VertexSet& B, Angle eta) {
  const auto f = characteristic_function(x, B, Angle::turns(eta.radian() / kTwoPi));
  return {std::norm(f), prefix_product_expectation(x, B, eta, 0.0, -1.0)};
}

double prefix_product_expectation(const Direction& x, const VertexSet& B, Angle eta, double kappa,
                                  double weight) {
  const PrefixTree t(B, x, eta.radian());
  return product_sum(t, 0, 0, t.size(), kappa, weight) / static_cast<double>(t.size());
}

std::vector<BigInt> j_size_census(const VertexSet& B, double kappa) {
  const PrefixTree t(B, Direction(static_cast<std::size_t>(B.dimension()), 0), 0.0);
  std::vector<std::uint64_t> hist(static_cast<std::size_t>(t.n() + 1), 0);
  j_size_walk(t, 0, 0, t.size(), kappa, 0, hist);
  return {hist.begin(), hist.end()};
}

}  // namespace anticonc
