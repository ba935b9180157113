#pragma once

// Gap-hamming evaluation, the two-bit mod-4 protocol, the randomized
// sampling protocol, the repetition lift, sampling from U_{n,k}, and
// success-rate estimation.

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "anticonc/common.hpp"
#include "anticonc/sign_vector.hpp"

namespace anticonc {

/// EGH_{n,k}: One if <x,y> = k, Zero if <x,y> = -k, Star otherwise.
enum class EghValue { Zero, One, Star };
EghValue egh_eval(const SignVector& x, const SignVector& y, long long k);

enum class Output { Zero, One, Abort };

struct ProtocolOutcome {
  Output output = Output::Abort;
  std::vector<bool> transcript;
  std::size_t bits_communicated() const { return transcript.size(); }
};

struct Mod4Result {
  int residue = 0;  // <x,y> mod 4, in {0,1,2,3}
  ProtocolOutcome outcome;
};

/// Alice sends p = #{j : x_j = -1} mod 2, Bob sends q likewise; both then know
/// residue = (n - 2(p + q)) mod 4. The outcome's output is One iff residue = n mod 4.
Mod4Result mod4_protocol(const SignVector& x, const SignVector& y);

/// Draws I_1..I_m uniformly from [n]; aborts when |{I_j}| > abort_threshold
/// or the sampled sum is 0, otherwise Alice sends x_s for s in S (ascending)
/// and Bob replies with the output bit (1 + sign(sum_j x_{I_j} y_{I_j})) / 2.
ProtocolOutcome randomized_gh(const SignVector& x, const SignVector& y, long long k, std::size_t m,
                              std::size_t abort_threshold, std::uint64_t seed);

/// ceil(20 n^2 / k^2)
std::size_t default_sample_count(std::size_t n, std::size_t k);
/// ceil((1 - beta) n) - 1, floored at 0.
std::size_t default_abort_threshold(std::size_t n, double beta);

struct LiftedPair {
  SignVector x;
  SignVector y;
};

/// Repeats every coordinate t times (coordinate j occupies j t .. j t + t - 1),
/// multiplies both vectors by z and moves position i to perm[i].
LiftedPair lift_instance(const SignVector& x, const SignVector& y, std::size_t t, const SignVector& z,
                         std::span<const std::size_t> perm);
/// z uniform and perm a uniform permutation, both drawn from seed.
LiftedPair lift_instance(const SignVector& x, const SignVector& y, std::size_t t, std::uint64_t seed);

/// A pair uniform on {(x, y) : <x,y> in {k, -k}}.
std::pair<SignVector, SignVector> sample_Unk(std::size_t n, long long k, std::uint64_t seed);

/// A protocol for EGH_{n,k}: (x, y, seed) -> outcome.
using Protocol = std::function<ProtocolOutcome(const SignVector&, const SignVector&, std::uint64_t)>;

/// Decides EGH_{n,k} from the mod-4 residue: One if residue = k mod 4, Zero
/// if residue = -k mod 4. When k = -k mod 4 the residue carries no signal
/// and the decider outputs One.
Protocol mod4_decider(long long k);
Protocol constant_protocol(Output value);
Protocol randomized_gh_protocol(long long k, std::size_t m, std::size_t abort_threshold);

struct SuccessEstimate {
  std::uint64_t trials = 0;
  std::uint64_t successes = 0;
  std::uint64_t aborts = 0;
  double rate = 0.0;
  double ci_halfwidth = 0.0;  // Wilson 95% interval half-width
};

/// Wilson 95% interval half-width for s successes out of n trials.
double wilson_halfwidth(std::uint64_t successes, std::uint64_t trials);

/// Trial i samples (x, y) from U_{n,k} with seed base_seed ^ i and runs the
/// protocol with seed mix_seed(base_seed ^ i, 1). Success means the output
/// equals egh_eval(x, y, k); aborts are failures. Requires trials >= 100.
SuccessEstimate estimate_success(const Protocol& protocol, std::size_t n, long long k, std::uint64_t trials,
                                 std::uint64_t seed, unsigned jobs = 0);

struct ExactSuccess {
  std::uint64_t pairs = 0;  // size of the support of U_{n,k}
  std::uint64_t successes = 0;
  std::uint64_t aborts = 0;
  Rational rate;
};

/// Exact success probability over the whole support of U_{n,k} (n <= 12);
/// the protocol runs on the i-th support pair with seed base_seed ^ i.
ExactSuccess exact_success(const Protocol& protocol, std::size_t n, long long k, std::uint64_t seed = 0);

std::string output_name(Output o);

}  // namespace anticonc
