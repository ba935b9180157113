#pragma once

// Characteristic functions f_x(theta) = E_Y exp(2 pi i theta <x, Y>), the
// quadrature bounds built from them, the entropy-parameter solver, the
// coordinate-by-coordinate witness quantities (gamma_j, phi_j, J, G) and the
// bad-direction census.

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "anticonc/common.hpp"
#include "anticonc/exact_dist.hpp"
#include "anticonc/vertex_set.hpp"

namespace anticonc {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// An angle stored both as a turn fraction theta in [0, 1) and in radians.
/// turns() reduces mod 1; radians() keeps the value it was given so witness
/// computations see exactly the eta the caller asked for.
class Angle {
 public:
  static Angle turns(double theta);
  static Angle radians(double eta);

  double turn() const { return theta_; }
  double radian() const { return eta_; }

 private:
  Angle(double theta, double eta) : theta_(theta), eta_(eta) {}
  double theta_;
  double eta_;
};

/// Grid estimate of a theta-integral with an error estimate.
struct QuadratureEstimate {
  double value = 0.0;
  double error = 0.0;
};

/// f(theta) for the law d, evaluated directly.
std::complex<double> characteristic_function(const IntDistribution& d, Angle theta);
std::complex<double> characteristic_function(const Direction& x, const VertexSet& B, Angle theta);

/// f(m / nodes) for m = 0 .. nodes-1; requires nodes > k_max - k_min.
std::vector<std::complex<double>> characteristic_grid(const IntDistribution& d, std::size_t nodes);

/// Periodic-grid estimate of E_theta |f_x(theta)|, which dominates
/// max_k Pr[<x, Y> = k]. The error is the difference between the full grid
/// and the even-node half grid. Requires nodes >= 4 * sum|x_j| + 4, nodes even.
QuadratureEstimate star_bound(const Direction& x, const VertexSet& B, std::size_t nodes = 1u << 16);
QuadratureEstimate star_bound(const IntDistribution& d, std::size_t nodes);

/// 2 * int_0^1 |sin(4 pi theta)| |f_x(theta)| dtheta, which dominates the
/// step-4 smoothness gap. Same grid and error convention as star_bound.
QuadratureEstimate smoothness_rhs(const Direction& x, const VertexSet& B, std::size_t nodes = 1u << 16);
QuadratureEstimate smoothness_rhs(const IntDistribution& d, std::size_t nodes);

/// Binary entropy, base 2.
double binary_entropy(double xi);

struct EntropyParams {
  double lambda = 0.0;
  double kappa = 0.0;  // H(1 / log2(1/kappa)) = lambda
  double tau = 0.0;    // tau + H(tau) = lambda
  double c = 0.0;      // decay constant of the census bound
};

/// Smallest roots kappa in (0, 1/4], tau in (0, 2/3) by bisection, with
/// c = min(kappa tau / 8, lambda ln2 / 2) unless overridden.
EntropyParams solve_parameters(double lambda, std::optional<double> c_override = std::nullopt);

struct WitnessProfile {
  std::vector<Rational> gamma;  // gamma_j in [0, 1/2]
  std::vector<double> phi;      // radians, principal branch halved
  std::vector<bool> phi_degenerate;  // gamma_j > 0 but the phase product vanished
  std::vector<int> J;           // {j : gamma_j >= kappa}, 0-based, ascending
  std::vector<int> G;           // {j in J : sin^2(phi_j + x_j eta) >= sin^2(2 eta) / 4}
};

/// gamma_j, phi_j, J and G for the point y of B, computed from exact
/// conditional counts given the prefix y_{<j}.
WitnessProfile witness_profile(const VertexSet& B, const SignVector& y, const Direction& x, Angle eta,
                               double kappa);

struct InequalitySides {
  double lhs = 0.0;
  double rhs = 0.0;
};

/// lhs = |E_Y exp(i eta <x, Y>)|^2, rhs = E_Y prod_j (1 - gamma_j sin^2(phi_j + x_j eta)).
InequalitySides lemma_tech_check(const Direction& x, const VertexSet& B, Angle eta);

/// Walks the prefix tree of B once and returns
/// E_Y prod_{j in J(Y)} (1 - weight * sin^2(phi_j + x_j eta)), where J uses
/// threshold kappa (kappa <= 0 puts every coordinate in J) and weight = -1
/// means "use gamma_j itself".
double prefix_product_expectation(const Direction& x, const VertexSet& B, Angle eta, double kappa,
                                  double weight);

/// Number of y in B with |J(y)| = s, for s = 0..n.
std::vector<BigInt> j_size_census(const VertexSet& B, double kappa);

struct SinGap {
  double min_over_phi = 0.0;
  double rhs = 0.0;  // |sin(eta (u - v))| / 2
};

/// Grid minimum over phi in [0, pi) of max(|sin(phi + eta u)|, |sin(phi + eta v)|).
SinGap sin_gap_lower_bound(Angle eta, long long u, long long v, std::size_t grid = 1000);

struct CensusMode {
  bool exhaustive = true;
  std::uint64_t seed = 0;
  std::uint64_t count = 0;

  static CensusMode all() { return {}; }
  static CensusMode sampled(std::uint64_t seed, std::uint64_t count) { return {false, seed, count}; }
};

struct CensusResult {
  BigInt violations;
  BigInt tested;
  double threshold = 0.0;  // 2 exp(-c n sin^2(4 pi theta))
};

/// Counts directions x in {+1,-1}^n with |f_x(theta)| >= 2 exp(-c n sin^2(4 pi theta)).
CensusResult tech_census(const VertexSet& B, Angle theta, const EntropyParams& params, CensusMode mode,
                         unsigned jobs = 0);

}  // namespace anticonc
