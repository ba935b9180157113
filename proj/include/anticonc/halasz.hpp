#pragma once

// Additive-structure machinery for two-cubes: signed zero-sum counts r_ell,
// Sidon and weak-Sidon checks, the level-set function D(theta), the Halasz
// quantities R_{C,ell} and mu_C, the nu-power inequalities and the convexity
// function Phi.

#include <optional>
#include <span>
#include <vector>

#include "anticonc/common.hpp"
#include "anticonc/fourier.hpp"
#include "anticonc/two_cube.hpp"
#include "anticonc/vertex_set.hpp"

namespace anticonc {

/// Nonzero differences d_j = u_j - v_j; flags are computed, never supplied.
class DifferenceProfile {
 public:
  explicit DifferenceProfile(std::vector<long long> d);
  static DifferenceProfile of(const TwoCube& A) { return DifferenceProfile(A.differences()); }

  int size() const { return static_cast<int>(d_.size()); }
  std::span<const long long> values() const { return d_; }
  long long max_abs() const;
  /// All |d_j| distinct.
  bool all_distinct() const { return all_distinct_; }
  bool weak_sidon() const { return weak_sidon_; }

 private:
  std::vector<long long> d_;
  bool all_distinct_ = false;
  bool weak_sidon_ = false;
};

/// #{(eps, j) in {+-1}^{2 ell} x [n]^{2 ell} : sum_i eps_i d_{j_i} = 0}.
/// Brute force when n^{2 ell} 4^ell <= 1e9, otherwise exact polynomial
/// coefficients: r_ell = sum_s c(s)^2 with c(s) the coefficient of z^s in
/// (sum_j z^{d_j} + z^{-d_j})^ell.
BigInt count_solutions_r(const DifferenceProfile& d, int ell);
BigInt count_solutions_r_brute(const DifferenceProfile& d, int ell);
BigInt count_solutions_r_poly(const DifferenceProfile& d, int ell);

struct SidonResult {
  bool holds = false;
  BigInt count;
};

/// Ordered quadruples with s1 + s2 = s3 + s4; Sidon iff count = 4 C(n,2) + n.
SidonResult sidon_check(std::span<const long long> S);
/// Signed quadruples with e1 s1 + e2 s2 = e3 s3 + e4 s4; weak iff count <= 100 n^2.
SidonResult weak_sidon_check(std::span<const long long> S);
/// Greedy Sidon sequence 1, 2, 4, 8, 13, ... of length n (n <= 200).
std::vector<long long> mian_chowla(int n);

/// D(theta) = sum_{d in G} sin^2(2 pi theta d).
double D_theta(std::span<const long long> G, double theta);
/// Fraction of the nodes m/nodes with D <= rho (nodes >= 2^14).
double level_set_probability(std::span<const long long> G, double rho, std::size_t nodes = 1u << 16);
/// 4 r_ell / (lambda n)^{2 ell + 1/2} * sqrt(rho).
double level_set_claim_bound(const BigInt& r_ell, int ell, double lambda, int n, double rho);

struct MomentCheck {
  double moment = 0.0;  // E_theta (|G| - 2 D(theta))^{2 ell}
  double bound = 0.0;   // 2^{-2 ell} r_ell(G)
};

/// Requires nodes > 4 ell max|d| (the grid is then exact for the trig polynomial).
MomentCheck moment_check(std::span<const long long> G, int ell, std::size_t nodes);

/// Geometric grid {2^-i : i = 0 .. count-1}.
std::vector<double> geometric_nu_grid(int count = 40);

struct HalaszParams {
  double C = 1.0;
  int ell_max = 3;
  std::vector<double> nu_grid = geometric_nu_grid();
};

struct HalaszR {
  double R = 0.0;  // min over ell of R_{C,ell}
  int argmin_ell = 1;
  std::vector<BigInt> r;     // r_1 .. r_{ell_max}
  std::vector<double> R_ell; // R_{C,1} .. R_{C,ell_max}
};

/// R_{C,ell} = C^ell r_ell / n^{2 ell + 1/2} + exp(-n / C), minimized over ell <= ell_max.
HalaszR halasz_R(const DifferenceProfile& d, const HalaszParams& params);
double halasz_R_term(const BigInt& r_ell, int ell, int n, double C);

struct MuC {
  double mu = 1.0;
  std::optional<double> nu_star;  // grid point attaining the minimum, if any value was <= 1
};

/// min over the nu grid of (3 exp(-nu n / C) + R / (50 sqrt nu))^{1/(1+nu)^2},
/// and 1 when every grid value of the bracket exceeds 1.
MuC mu_C_from_R(double R, int n, double C, std::span<const double> nu_grid);
MuC mu_C(const DifferenceProfile& d, const HalaszParams& params);

/// Largest value g on the grid {2^{-i/4} : i = 0..80} with holds(g), or 0.
template <class Pred>
double largest_feasible(Pred&& holds) {
  for (int i = 0; i <= 80; ++i) {
    const double g = std::exp2(-static_cast<double>(i) / 4.0);
    if (holds(g)) return g;
  }
  return 0.0;
}

struct ConstantCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double max_feasible = 0.0;  // largest grid constant keeping lhs <= rhs
};

/// lhs = |E_Y exp(i eta <x,Y>)|^{1+nu};
/// rhs = E_Y prod_{j in J(Y)} (1 - c0 nu sin^2(phi_j + x_j eta)).
ConstantCheck nu_product_bound(const Direction& x, const VertexSet& B, Angle eta, double nu, double kappa,
                               double c0);

/// X uniform on `support` (choice masks into A; all of A when empty).
/// lhs = (E_X prod_{j in J(y)} (1 - c0 nu sin^2(phi_j + X_j eta)))^{1+nu};
/// rhs = E_X exp(-c nu sum_{j in G} sin^2(d_j eta)), G = J'(X) n J(y), where
/// J'(x) = {j : mu_j(x) >= kappa} and mu_j conditions on X_{>j}.
ConstantCheck nu_average_bound(const TwoCube& A, std::span<const std::uint64_t> support, const VertexSet& B,
                               const SignVector& y, Angle eta, double nu, double kappa, double c0, double c);

/// Phi(xi, p, nu) = (p + (1-p) xi^{1+nu}) - (p + (1-p) xi)^{1+nu};
/// xi in [0, 1/2], p in [0, 1], nu in [0, 1].
double strict_convexity_phi(double xi, double p, double nu);
/// Exact value for integer nu in {0, 1}.
Rational strict_convexity_phi_exact(const Rational& xi, const Rational& p, unsigned nu);
/// min over the grid of Phi(1/2, kappa, nu) / nu.
double c1_from_grid(double kappa, std::span<const double> nu_grid);

}  // namespace anticonc
