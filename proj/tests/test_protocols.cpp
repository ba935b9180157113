#include <doctest.h>

#include <boost/math/distributions/chi_squared.hpp>
#include <set>

#include "anticonc/protocols.hpp"
#include "oracles.hpp"

using namespace anticonc;

namespace {

long long residue4(long long v) { return ((v % 4) + 4) % 4; }

}  // namespace

TEST_CASE("extended gap-hamming evaluation") {
  const auto x = SignVector::from_string("++++");
  CHECK(egh_eval(x, SignVector::from_string("+++-"), 2) == EghValue::One);
  CHECK(egh_eval(x, SignVector::from_string("+---"), 2) == EghValue::Zero);
  CHECK(egh_eval(x, SignVector::from_string("++--"), 2) == EghValue::Star);
  CHECK_THROWS_AS(egh_eval(x, SignVector::from_string("+++"), 2), ValidationError);
}

TEST_CASE("mod-4 protocol examples") {
  // <x, y> = -1 here, which is 3 mod 4
  const auto r = mod4_protocol(SignVector::from_string("++-"), SignVector::from_string("+-+"));
  CHECK(r.residue == 3);
  CHECK(r.outcome.bits_communicated() == 2);
  const auto s = mod4_protocol(SignVector::from_string("++++"), SignVector::from_string("++++"));
  CHECK(s.residue == 0);
  CHECK(s.outcome.output == Output::One);
}

TEST_CASE("mod-4 residue is exact for every pair up to n = 10") {
  for (int n = 1; n <= 10; ++n) {
    long long exceptions = 0;
    for (std::uint32_t a = 0; a < (1u << n); ++a) {
      const auto x = SignVector::from_mask(a, n);
      for (std::uint32_t b = 0; b < (1u << n); ++b) {
        const auto y = SignVector::from_mask(b, n);
        const auto r = mod4_protocol(x, y);
        exceptions += r.residue != residue4(inner_product(x, y));
        exceptions += r.outcome.bits_communicated() != 2;
      }
    }
    CHECK(exceptions == 0);
  }
}

TEST_CASE("randomized sampling protocol") {
  const std::size_t n = 64;
  Rng rng(5);
  SignVector x(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (rng.coin()) x.flip(j);
  }
  // y = x: every sampled product is +1, so the protocol answers One unless it aborts
  int wins = 0;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto o = randomized_gh(x, x, 64, 10, n, seed);
    wins += o.output == Output::One;
    CHECK(o.output != Output::Zero);
  }
  CHECK(wins >= 50);

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto o = randomized_gh(x, x, 64, 10, 0, seed);
    CHECK(o.output == Output::Abort);
    CHECK(o.bits_communicated() == 0);
  }
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t threshold = 1 + seed % 12;
    const auto o = randomized_gh(x, x, 64, 20, threshold, seed);
    CHECK(o.bits_communicated() <= threshold + 1);
    if (o.output != Output::Abort) CHECK(o.transcript.back() == true);
  }
  CHECK(randomized_gh(x, x, 64, 10, n, 7).transcript == randomized_gh(x, x, 64, 10, n, 7).transcript);

  CHECK(default_sample_count(100, 40) == 125);
  CHECK(default_sample_count(10, 3) == 223);
  CHECK(default_abort_threshold(100, 0.0) == 99);
  CHECK(default_abort_threshold(100, 0.5) == 49);
  CHECK(default_abort_threshold(1, 1.0) == 0);
}

TEST_CASE("repetition lift") {
  const auto x = SignVector::from_string("+-+");
  const auto y = SignVector::from_string("--+");
  const std::vector<std::size_t> id{0, 1, 2, 3, 4, 5};
  const auto l = lift_instance(x, y, 2, SignVector(6), id);
  CHECK(l.x.to_string() == "++--++");
  CHECK(l.y.to_string() == "----++");
  const std::vector<std::size_t> bad{0, 0, 1, 2, 3, 4};
  CHECK_THROWS_AS(lift_instance(x, y, 2, SignVector(6), bad), ValidationError);
  CHECK_THROWS_AS(lift_instance(x, y, 0, 1), ValidationError);

  Rng rng(77);
  long long exceptions = 0;
  for (int i = 0; i < 2000; ++i) {
    const std::size_t n = 1 + rng.below(20);
    const std::size_t t = 1 + rng.below(6);
    SignVector a(n);
    SignVector b(n);
    for (std::size_t j = 0; j < n; ++j) {
      if (rng.coin()) a.flip(j);
      if (rng.coin()) b.flip(j);
    }
    const auto lifted = lift_instance(a, b, t, rng.next());
    exceptions += inner_product(lifted.x, lifted.y) != static_cast<long long>(t) * inner_product(a, b);
    exceptions += lifted.x.size() != n * t;
  }
  CHECK(exceptions == 0);

  // the masking vector z makes each lifted coordinate of x a fair coin
  const auto x0 = SignVector::from_string("++");
  std::vector<long long> counts(4, 0);
  for (std::uint64_t seed = 0; seed < 4000; ++seed) {
    const auto lifted = lift_instance(x0, x0, 1, seed);
    ++counts[lifted.x.mask()];
  }
  const boost::math::chi_squared dist(3);
  CHECK(boost::math::cdf(complement(dist, oracle::chi_square_uniform(counts))) > 0.001);
}

TEST_CASE("sampling from U_{n,k}") {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const auto [x, y] = sample_Unk(9, 3, seed);
    CHECK(std::llabs(inner_product(x, y)) == 3);
  }
  const auto [x0, y0] = sample_Unk(6, 0, 4);
  CHECK(inner_product(x0, y0) == 0);
  CHECK_THROWS_AS(sample_Unk(6, 3, 1), ValidationError);
  CHECK_THROWS_AS(sample_Unk(6, 8, 1), ValidationError);

  // both signs and many distinct pairs show up
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  int plus = 0;
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto [x, y] = sample_Unk(5, 1, seed);
    seen.insert({x.mask(), y.mask()});
    plus += inner_product(x, y) == 1;
  }
  CHECK(plus > 850);
  CHECK(plus < 1150);
  // |U_{5,1}| = 2^5 * (C(5,2) + C(5,3)) = 640
  CHECK(seen.size() > 500);
}

TEST_CASE("exact success of the mod-4 decider") {
  for (std::size_t n = 1; n <= 9; ++n) {
    for (long long k = static_cast<long long>(n % 2); k <= static_cast<long long>(n); k += 2) {
      const auto e = exact_success(mod4_decider(k), n, k);
      if (k % 2 == 1) {
        CHECK(e.rate == 1);
      } else if (residue4(k) == residue4(-k) && k > 0) {
        CHECK(e.rate == Rational(1, 2));
      }
    }
  }
  const auto e = exact_success(mod4_decider(1), 5, 1);
  CHECK(e.pairs == 640);
  CHECK(e.successes == 640);
  CHECK(e.rate == 1);
  // k = 0 has a single output value, so any decider is always right
  CHECK(exact_success(constant_protocol(Output::Zero), 4, 0).rate == 0);
  CHECK(exact_success(constant_protocol(Output::One), 4, 0).rate == 1);
  CHECK_THROWS_AS(exact_success(mod4_decider(1), 13, 1), InfeasibleError);
}

TEST_CASE("constant protocols succeed half the time") {
  const auto e = exact_success(constant_protocol(Output::One), 8, 2);
  CHECK(e.rate == Rational(1, 2));
  const auto s = estimate_success(constant_protocol(Output::Zero), 31, 5, 4000, 9);
  CHECK(std::abs(s.rate - 0.5) < 0.05);
  CHECK(s.ci_halfwidth > 0);
  const auto a = estimate_success(constant_protocol(Output::Abort), 31, 5, 200, 9);
  CHECK(a.successes == 0);
  CHECK(a.aborts == 200);
  CHECK_THROWS_AS(estimate_success(constant_protocol(Output::One), 31, 5, 99, 9), ValidationError);
}

TEST_CASE("Wilson interval") {
  CHECK(wilson_halfwidth(50, 100) == doctest::Approx(0.09617).epsilon(1e-3));
  CHECK(wilson_halfwidth(100, 100) > 0);
  CHECK(wilson_halfwidth(100, 100) < 0.02);
}

TEST_CASE("randomized protocol meets the two-thirds target") {
  const std::size_t n = 100;
  const long long k = 40;
  const auto m = default_sample_count(n, k);
  const auto s = estimate_success(randomized_gh_protocol(k, m, default_abort_threshold(n, 0.0)), n, k, 2000, 1);
  CHECK(s.rate >= 2.0 / 3.0);

  // identical across worker counts
  const auto p = randomized_gh_protocol(k, m, default_abort_threshold(n, 0.0));
  const auto s1 = estimate_success(p, n, k, 500, 42, 1);
  const auto s4 = estimate_success(p, n, k, 500, 42, 4);
  CHECK(s1.successes == s4.successes);
  CHECK(s1.aborts == s4.aborts);
  CHECK(s1.rate == s4.rate);
}

TEST_CASE("output names") {
  CHECK(output_name(Output::Zero) == "0");
  CHECK(output_name(Output::One) == "1");
  CHECK(output_name(Output::Abort) == "abort");
}
