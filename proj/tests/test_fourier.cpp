#include <doctest.h>

#include <bit>
#include <numbers>

#include "anticonc/exact_dist.hpp"
#include "anticonc/fourier.hpp"
#include "oracles.hpp"

using namespace anticonc;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<oracle::Vec> vectors_of(const VertexSet& B) {
  std::vector<oracle::Vec> out;
  for (auto m : B.members()) {
    oracle::Vec v(B.dimension());
    for (int j = 0; j < B.dimension(); ++j) v[j] = ((m >> j) & 1U) ? -1 : 1;
    out.push_back(v);
  }
  return out;
}

Direction random_direction(Rng& rng, int n, long long bound) {
  Direction x(static_cast<std::size_t>(n));
  for (auto& v : x) v = static_cast<long long>(rng.below(static_cast<std::uint64_t>(2 * bound + 1))) - bound;
  return x;
}

const VertexSet kThree = VertexSet::explicit_set(
    2, {SignVector::from_string("++"), SignVector::from_string("+-"), SignVector::from_string("-+")});

}  // namespace

TEST_CASE("angles") {
  CHECK(Angle::turns(1.25).turn() == doctest::Approx(0.25));
  CHECK(Angle::turns(-0.25).turn() == doctest::Approx(0.75));
  CHECK(Angle::turns(0.125).radian() == doctest::Approx(kPi / 4));
  CHECK(Angle::radians(7.0).radian() == 7.0);
  CHECK_THROWS_AS(Angle::turns(NAN), ValidationError);
}

TEST_CASE("characteristic function values") {
  Rng rng(1);
  for (int i = 0; i < 10; ++i) {
    const auto B = VertexSet::random_subset(6, 10, static_cast<std::uint64_t>(i));
    const auto f = characteristic_function(random_direction(rng, 6, 4), B, Angle::turns(0));
    CHECK(f.real() == doctest::Approx(1.0));
    CHECK(f.imag() == doctest::Approx(0.0));
  }
  CHECK(std::abs(characteristic_function({1, 1}, VertexSet::cube(2), Angle::turns(0.125)) - 0.5) < 1e-12);
  CHECK(std::abs(characteristic_function({1}, VertexSet::cube(1), Angle::turns(0.25))) < 1e-12);

  // against the member-list oracle, and |f| <= 1
  for (int i = 0; i < 50; ++i) {
    const auto B = VertexSet::random_subset(7, 1 + rng.below(100), static_cast<std::uint64_t>(i));
    const auto x = random_direction(rng, 7, 9);
    const double theta = rng.uniform();
    const auto f = characteristic_function(x, B, Angle::turns(theta));
    CHECK(std::abs(f - oracle::char_fn(x, vectors_of(B), 2 * kPi * theta)) < 1e-9);
    CHECK(std::abs(f) <= 1 + 1e-12);
  }
}

TEST_CASE("grid evaluation matches direct evaluation") {
  Rng rng(3);
  for (int i = 0; i < 10; ++i) {
    const auto B = VertexSet::random_subset(8, 60, static_cast<std::uint64_t>(i));
    const auto d = direction_distribution(random_direction(rng, 8, 5), B);
    const std::size_t N = 256;
    const auto grid = characteristic_grid(d, N);
    for (std::size_t m = 0; m < N; m += 7) {
      const auto direct = characteristic_function(d, Angle::turns(static_cast<double>(m) / N));
      CHECK(std::abs(grid[m] - direct) < 1e-12);
    }
  }
  const auto d = binomial_distribution(8);
  CHECK_THROWS_AS(characteristic_grid(d, 16), ValidationError);
}

TEST_CASE("star bound") {
  const auto single = VertexSet::explicit_set(3, {SignVector::from_string("+-+")});
  const auto s = star_bound({2, -1, 5}, single);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-12));

  const auto c1 = star_bound({1}, VertexSet::cube(1));
  CHECK(std::abs(c1.value - 2 / kPi) < 1e-6);
  CHECK(c1.error < 1e-6);

  const auto c4 = star_bound({1, 1, 1, 1}, VertexSet::cube(4));
  CHECK(c4.value + c4.error >= 3.0 / 8.0);

  CHECK_THROWS_AS(star_bound({10, 10}, VertexSet::cube(2), 64), ValidationError);
  CHECK_THROWS_AS(star_bound({1, 1}, VertexSet::cube(2), 101), ValidationError);
}

TEST_CASE("star bound dominates the concentration probability") {
  Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    const int n = 4 + static_cast<int>(rng.below(9));
    const auto size = 1 + rng.below(std::uint64_t{1} << (n - 1));
    const auto B = VertexSet::random_subset(n, size, rng.next());
    const auto x = random_direction(rng, n, 6);
    const auto d = direction_distribution(x, B);
    const auto s = star_bound(d, std::size_t{1} << 16);
    CHECK(s.value + s.error >= concentration_probability(d).convert_to<double>() - 1e-12);
  }
}

TEST_CASE("Fourier inversion recovers the point masses") {
  Rng rng(5);
  for (int i = 0; i < 20; ++i) {
    const auto B = VertexSet::random_subset(6, 1 + rng.below(64), rng.next());
    const auto x = random_direction(rng, 6, 3);
    long long L = 0;
    for (auto v : x) L += std::llabs(v);
    const auto d = direction_distribution(x, B);
    const long long M = 2 * L + 1;
    for (long long k = -L; k <= L; ++k) {
      std::complex<double> acc = 0;
      for (long long m = 0; m < M; ++m) {
        const double t = static_cast<double>(m) / static_cast<double>(M);
        acc += characteristic_function(d, Angle::turns(t)) *
               std::polar(1.0, -2 * kPi * static_cast<double>(k * m % M) / static_cast<double>(M));
      }
      acc /= static_cast<double>(M);
      CHECK(std::abs(acc - d.probability(k).convert_to<double>()) < 1e-9);
    }
  }
}

TEST_CASE("smoothness integral") {
  const auto single = VertexSet::explicit_set(2, {SignVector::from_string("-+")});
  CHECK(std::abs(smoothness_rhs({3, 1}, single).value - 4 / kPi) < 1e-6);

  const Direction ones(4, 1);
  const auto d = direction_distribution(ones, VertexSet::cube(4));
  const auto r = smoothness_rhs(ones, VertexSet::cube(4));
  CHECK(r.value + r.error >= smoothness_gap(d, 4).convert_to<double>());

  // |f(theta)| = |f(1 - theta)|: the integrand is symmetric on the grid
  const auto grid = characteristic_grid(d, 1024);
  for (std::size_t m = 1; m < 1024; ++m) CHECK(std::abs(std::abs(grid[m]) - std::abs(grid[1024 - m])) < 1e-9);

  Rng rng(8);
  for (int i = 0; i < 100; ++i) {
    const int n = 3 + static_cast<int>(rng.below(8));
    const auto B = VertexSet::random_subset(n, 1 + rng.below(std::uint64_t{1} << n), rng.next());
    const auto x = random_direction(rng, n, 4);
    const auto dd = direction_distribution(x, B);
    const auto s = smoothness_rhs(dd, std::size_t{1} << 16);
    CHECK(s.value + s.error >= smoothness_gap(dd, 4).convert_to<double>() - 1e-12);
  }
}

TEST_CASE("entropy parameters") {
  CHECK(binary_entropy(0.5) == 1.0);
  CHECK(binary_entropy(0.0) == 0.0);
  const auto p = solve_parameters(1.0);
  CHECK(p.kappa == 0.25);
  CHECK(std::abs(p.tau - 0.22709219521934815) < 1e-12);
  CHECK(p.c == doctest::Approx(std::min(0.25 * p.tau / 8, std::log(2.0) / 2)));
  CHECK(solve_parameters(1.0, 0.5).c == 0.5);
  CHECK_THROWS_AS(solve_parameters(1.5), ValidationError);
  CHECK_THROWS_AS(solve_parameters(0.0), ValidationError);

  EntropyParams prev;
  for (int i = 1; i <= 10; ++i) {
    const double lambda = 0.1 * i;
    const auto q = solve_parameters(lambda);
    CHECK(std::abs(binary_entropy(1.0 / std::log2(1.0 / q.kappa)) - lambda) < 1e-12);
    CHECK(std::abs(q.tau + binary_entropy(q.tau) - lambda) < 1e-12);
    CHECK(q.kappa > 0);
    CHECK(q.kappa <= 0.25);
    if (i > 1) {
      CHECK(q.kappa > prev.kappa);
      CHECK(q.tau > prev.tau);
      CHECK(q.c > prev.c);
    }
    prev = q;
  }
}

TEST_CASE("witness profile examples") {
  const auto cube2 = VertexSet::cube(2);
  for (auto m : cube2.members()) {
    const auto p = witness_profile(cube2, SignVector::from_mask(m, 2), {1, 1}, Angle::radians(0.3), 0.4);
    CHECK(p.gamma == std::vector<Rational>{Rational(1, 2), Rational(1, 2)});
    CHECK(p.J == std::vector<int>{0, 1});
  }

  const auto a = witness_profile(kThree, SignVector::from_string("++"), {1, 1}, Angle::radians(0.7), 0.1);
  CHECK(a.gamma == std::vector<Rational>{Rational(1, 3), Rational(1, 2)});

  const auto b = witness_profile(kThree, SignVector::from_string("-+"), {1, 1}, Angle::radians(0.7), 0.1);
  CHECK(b.gamma[1] == 0);
  CHECK(b.phi[1] == 0.0);

  CHECK_THROWS_AS(witness_profile(kThree, SignVector::from_string("--"), {1, 1}, Angle::radians(0.7), 0.1),
                  ValidationError);
}

TEST_CASE("witness profiles agree with the conditional-count oracle") {
  Rng rng(21);
  for (int i = 0; i < 40; ++i) {
    const int n = 2 + static_cast<int>(rng.below(5));
    const auto B = VertexSet::random_subset(n, 1 + rng.below(std::uint64_t{1} << n), rng.next());
    const auto vs = vectors_of(B);
    const auto x = random_direction(rng, n, 5);
    const double eta = rng.uniform(-4, 4);
    const double kappa = rng.uniform(0.05, 0.5);
    for (std::size_t t = 0; t < vs.size(); ++t) {
      const auto y = SignVector::from_entries(vs[t]);
      const auto p = witness_profile(B, y, x, Angle::radians(eta), kappa);
      REQUIRE(p.gamma.size() == static_cast<std::size_t>(n));
      CHECK(p.phi[n - 1] == 0.0);
      for (int j = 0; j < n; ++j) {
        const auto [mn, cnt] = oracle::gamma(vs, vs[t], j);
        CHECK(p.gamma[j] == Rational(mn, cnt));
        CHECK(p.gamma[j] <= Rational(1, 2));
        CHECK(std::abs(p.phi[j] - oracle::phi(vs, vs[t], x, eta, j)) < 1e-9);
        const bool in_j = std::find(p.J.begin(), p.J.end(), j) != p.J.end();
        CHECK(in_j == (static_cast<double>(mn) / static_cast<double>(cnt) >= kappa));
      }
      for (int g : p.G) CHECK(std::find(p.J.begin(), p.J.end(), g) != p.J.end());
    }
  }
}

TEST_CASE("gamma is prefix-consistent when the last coordinate is dropped") {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const int n = 5;
    // B = B' x {+-1}: product in the last coordinate
    const auto Bp = VertexSet::random_subset(n - 1, 1 + rng.below(16), rng.next());
    std::vector<SignVector> rows;
    for (auto m : Bp.members()) {
      rows.push_back(SignVector::from_mask(m, n));
      rows.push_back(SignVector::from_mask(m | (1u << (n - 1)), n));
    }
    const auto B = VertexSet::explicit_set(n, rows);
    // B'' whose last coordinate is a function of the rest (injective projection)
    std::vector<SignVector> rows2;
    for (auto m : Bp.members()) rows2.push_back(SignVector::from_mask(m | ((std::popcount(m) & 1u) << (n - 1)), n));
    const auto B2 = VertexSet::explicit_set(n, rows2);
    const Direction x5{1, -2, 3, 1, 2};
    const Direction x4{1, -2, 3, 1};
    for (auto m : Bp.members()) {
      const auto short_profile = witness_profile(Bp, SignVector::from_mask(m, n - 1), x4, Angle::radians(1.0), 0.2);
      const std::uint32_t ext2 = m | ((std::popcount(m) & 1u) << (n - 1));
      const auto p1 = witness_profile(B, SignVector::from_mask(m, n), x5, Angle::radians(1.0), 0.2);
      const auto p2 = witness_profile(B2, SignVector::from_mask(ext2, n), x5, Angle::radians(1.0), 0.2);
      for (int j = 0; j < n - 1; ++j) {
        CHECK(p1.gamma[j] == short_profile.gamma[j]);
        CHECK(p2.gamma[j] == short_profile.gamma[j]);
      }
    }
  }
}

TEST_CASE("the product inequality for |E exp(i eta <x,Y>)|^2") {
  const auto e0 = lemma_tech_check({1, 2, 3}, VertexSet::random_subset(3, 5, 1), Angle::radians(0));
  CHECK(e0.lhs == doctest::Approx(1.0));
  CHECK(e0.rhs == doctest::Approx(1.0));

  const auto e1 = lemma_tech_check({1}, VertexSet::cube(1), Angle::radians(kPi / 3));
  CHECK(e1.lhs == doctest::Approx(0.25));
  CHECK(e1.rhs == doctest::Approx(0.625));

  Rng rng(99);
  for (int i = 0; i < 100; ++i) {
    const auto B = VertexSet::random_subset(3, 5, rng.next());
    const auto x = random_direction(rng, 3, 5);
    const double eta = rng.uniform(0, 2 * kPi);
    const auto s = lemma_tech_check(x, B, Angle::radians(eta));
    CHECK(s.lhs <= s.rhs + 1e-9);
    CHECK(std::abs(s.rhs - oracle::product_expectation(vectors_of(B), x, eta, 0.0, -1.0)) < 1e-9);
  }
  for (int i = 0; i < 100; ++i) {
    const int n = 4 + static_cast<int>(rng.below(7));
    const auto B = VertexSet::random_subset(n, 1 + rng.below(std::uint64_t{1} << n), rng.next());
    const auto s = lemma_tech_check(random_direction(rng, n, 7), B, Angle::radians(rng.uniform(-5, 5)));
    CHECK(s.lhs <= s.rhs + 1e-9);
  }
}

TEST_CASE("prefix expectations and J sizes") {
  Rng rng(17);
  for (int i = 0; i < 20; ++i) {
    const auto B = VertexSet::random_subset(5, 1 + rng.below(32), rng.next());
    const auto x = random_direction(rng, 5, 4);
    const double eta = rng.uniform(-3, 3);
    const double kappa = rng.uniform(0.1, 0.45);
    CHECK(std::abs(prefix_product_expectation(x, B, Angle::radians(eta), kappa, 0.3) -
                   oracle::product_expectation(vectors_of(B), x, eta, kappa, 0.3)) < 1e-9);

    const auto census = j_size_census(B, kappa);
    std::vector<BigInt> expected(6);
    for (const auto& y : vectors_of(B)) {
      int size = 0;
      for (int j = 0; j < 5; ++j) {
        const auto [mn, cnt] = oracle::gamma(vectors_of(B), y, j);
        size += static_cast<double>(mn) / static_cast<double>(cnt) >= kappa;
      }
      expected[static_cast<std::size_t>(size)] += 1;
    }
    CHECK(census == expected);
  }
  const auto cube = j_size_census(VertexSet::cube(6), 0.5);
  CHECK(cube[6] == 64);
}

TEST_CASE("one good choice among two angles") {
  const auto same = sin_gap_lower_bound(Angle::radians(0.4), 3, 3);
  CHECK(same.rhs == 0.0);
  CHECK(same.min_over_phi >= same.rhs - 1e-9);

  const auto a = sin_gap_lower_bound(Angle::radians(kPi / 4), 1, -1);
  CHECK(a.min_over_phi == doctest::Approx(std::sqrt(0.5)).epsilon(1e-3));
  CHECK(a.rhs == doctest::Approx(0.5));

  const auto b = sin_gap_lower_bound(Angle::radians(kPi / 3), 2, 0);
  CHECK(b.rhs == doctest::Approx(0.4330127));
  CHECK(b.min_over_phi >= b.rhs);

  CHECK_THROWS_AS(sin_gap_lower_bound(Angle::radians(1), 1, 2, 999), ValidationError);

  Rng rng(35);
  for (int i = 0; i < 2000; ++i) {
    const auto eta = Angle::radians(rng.uniform(0, 2 * kPi));
    const auto u = static_cast<long long>(rng.below(101)) - 50;
    const auto v = static_cast<long long>(rng.below(101)) - 50;
    const auto g = sin_gap_lower_bound(eta, u, v);
    CHECK(g.min_over_phi >= g.rhs - 1e-9);
  }
}

TEST_CASE("direction census") {
  const auto params = solve_parameters(0.05);
  const auto B = VertexSet::random_subspace(8, 5, 3);
  CHECK(tech_census(B, Angle::turns(0), params, CensusMode::all()).violations == 0);

  const auto single = VertexSet::explicit_set(8, {SignVector::from_string("+-++-+--")});
  const auto strong = solve_parameters(0.05, 1.0 / 8.0);
  const auto all = tech_census(single, Angle::turns(0.125), strong, CensusMode::all());
  CHECK(all.violations == 256);
  CHECK(all.tested == 256);

  // every direction has |f| = cos(pi/4)^8 = 1/16 on the cube
  const auto cube = tech_census(VertexSet::cube(8), Angle::turns(0.125), params, CensusMode::all());
  CHECK(cube.tested == 256);
  CHECK(cube.violations.convert_to<double>() / 256.0 <= std::exp2(-8 * (1 - 0.3)));
  // a violation is |f| >= 2 exp(-c n sin^2(4 pi theta)) = 2 exp(-8c) here
  const auto strict = tech_census(VertexSet::cube(8), Angle::turns(0.125), solve_parameters(1.0, 4.0),
                                  CensusMode::all());
  CHECK(strict.violations == 256);  // 2 exp(-32) < 1/16
  const auto lenient = tech_census(VertexSet::cube(8), Angle::turns(0.125), solve_parameters(1.0, 0.4),
                                   CensusMode::all());
  CHECK(lenient.violations == 0);  // 2 exp(-3.2) = 0.0815 > 1/16

  // brute-force count with the oracle
  const double c = 0.05;
  const auto p = solve_parameters(0.5, c);
  const auto S = VertexSet::random_subset(6, 12, 5);
  const double theta = 0.1;
  const double threshold = 2 * std::exp(-c * 6 * std::pow(std::sin(4 * kPi * theta), 2));
  long long expected = 0;
  for (const auto& x : oracle::cube(6)) {
    std::vector<long long> xl(x.begin(), x.end());
    expected += std::abs(oracle::char_fn(xl, vectors_of(S), 2 * kPi * theta)) >= threshold;
  }
  CHECK(tech_census(S, Angle::turns(theta), p, CensusMode::all()).violations == expected);

  const auto s1 = tech_census(B, Angle::turns(0.2), p, CensusMode::sampled(9, 500), 1);
  const auto s4 = tech_census(B, Angle::turns(0.2), p, CensusMode::sampled(9, 500), 4);
  CHECK(s1.violations == s4.violations);
  CHECK(s1.tested == 500);
  CHECK_THROWS_AS(tech_census(VertexSet::cube(17), Angle::turns(0.2), p, CensusMode::all()), InfeasibleError);
}
