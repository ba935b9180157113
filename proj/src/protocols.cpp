#include "anticonc/protocols.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>

namespace anticonc {

namespace {

void check_same_dimension(const SignVector& x, const SignVector& y, const char* op) {
  if (x.size() != y.size()) throw ValidationError(std::string(op) + ": dimension mismatch");
}

void check_promise(std::size_t n, long long k, const char* op) {
  if (k < 0 || static_cast<std::size_t>(k) > n) {
    throw ValidationError(std::string(op) + ": k must lie in [0, n]");
  }
  if ((static_cast<long long>(n) - k) % 2 != 0) {
    throw ValidationError(std::string(op) + ": k and n differ in parity, so the promise support is empty");
  }
}

int mod4(long long v) { return static_cast<int>(((v % 4) + 4) % 4); }

bool matches(Output o, EghValue v) {
  return (o == Output::One && v == EghValue::One) || (o == Output::Zero && v == EghValue::Zero);
}

}  // namespace

EghValue egh_eval(const SignVector& x, const SignVector& y, long long k) {
  check_same_dimension(x, y, "egh_eval");
  const long long ip = inner_product(x, y);
  if (ip == k) return EghValue::One;
  if (ip == -k) return EghValue::Zero;
  return EghValue::Star;
}

Mod4Result mod4_protocol(const SignVector& x, const SignVector& y) {
  check_same_dimension(x, y, "mod4_protocol");
  const bool p = x.count_negative() % 2 == 1;
  const bool q = y.count_negative() % 2 == 1;
  Mod4Result r;
  const auto n = static_cast<long long>(x.size());
  r.residue = mod4(n - 2 * (static_cast<long long>(p) + static_cast<long long>(q)));
  r.outcome.transcript = {p, q};
  r.outcome.output = r.residue == mod4(n) ? Output::One : Output::Zero;
  return r;
}

ProtocolOutcome randomized_gh(const SignVector& x, const SignVector& y, long long /*k*/, std::size_t m,
                              std::size_t abort_threshold, std::uint64_t seed) {
  check_same_dimension(x, y, "randomized_gh");
  if (m < 1) throw ValidationError("randomized_gh: m must be positive");
  if (x.size() == 0) throw ValidationError("randomized_gh: empty input");
  Rng rng(seed);
  std::vector<std::size_t> draws(m);
  for (auto& d : draws) d = static_cast<std::size_t>(rng.below(x.size()));

  std::vector<std::size_t> distinct = draws;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());

  ProtocolOutcome out;
  if (distinct.size() > abort_threshold) return out;
  long long sum = 0;
  for (auto i : draws) sum += x[i] * y[i];
  if (sum == 0) return out;
  for (auto s : distinct) out.transcript.push_back(x.negative(s));
  out.output = sum > 0 ? Output::One : Output::Zero;
  out.transcript.push_back(out.output == Output::One);
  return out;
}

std::size_t default_sample_count(std::size_t n, std::size_t k) {
  if (k == 0) throw ValidationError("default_sample_count: k must be positive");
  const std::size_t num = 20 * n * n;
  const std::size_t den = k * k;
  return (num + den - 1) / den;
}

std::size_t default_abort_threshold(std::size_t n, double beta) {
  if (!(beta >= 0.0 && beta <= 1.0)) throw ValidationError("default_abort_threshold: beta must lie in [0, 1]");
  const double c = std::ceil((1.0 - beta) * static_cast<double>(n));
  return c >= 1.0 ? static_cast<std::size_t>(c) - 1 : 0;
}

LiftedPair lift_instance(const SignVector& x, const SignVector& y, std::size_t t, const SignVector& z,
                         std::span<const std::size_t> perm) {
  check_same_dimension(x, y, "lift_instance");
  if (t < 1) throw ValidationError("lift_instance: t must be positive");
  const std::size_t N = x.size() * t;
  if (N > 1'000'000) throw ValidationError("lift_instance: t n must be at most 10^6");
  if (z.size() != N || perm.size() != N) throw ValidationError("lift_instance: z and perm must have length t n");
  std::vector<bool> seen(N, false);
  for (auto p : perm) {
    if (p >= N || seen[p]) throw ValidationError("lift_instance: perm is not a permutation");
    seen[p] = true;
  }
  LiftedPair out{SignVector(N), SignVector(N)};
  for (std::size_t i = 0; i < N; ++i) {
    const std::size_t j = i / t;
    const int zi = z[i];
    out.x.set(perm[i], x[j] * zi);
    out.y.set(perm[i], y[j] * zi);
  }
  return out;
}

LiftedPair lift_instance(const SignVector& x, const SignVector& y, std::size_t t, std::uint64_t seed) {
  check_same_dimension(x, y, "lift_instance");
  if (t < 1) throw ValidationError("lift_instance: t must be positive");
  const std::size_t N = x.size() * t;
  if (N > 1'000'000) throw ValidationError("lift_instance: t n must be at most 10^6");
  Rng rng(seed);
  SignVector z(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (rng.coin()) z.flip(i);
  }
  std::vector<std::size_t> perm(N);
  for (std::size_t i = 0; i < N; ++i) perm[i] = i;
  for (std::size_t i = N; i > 1; --i) std::swap(perm[i - 1], perm[static_cast<std::size_t>(rng.below(i))]);
  return lift_instance(x, y, t, z, perm);
}

std::pair<SignVector, SignVector> sample_Unk(std::size_t n, long long k, std::uint64_t seed) {
  if (n < 1) throw ValidationError("sample_Unk: n must be positive");
  check_promise(n, k, "sample_Unk");
  Rng rng(seed);
  SignVector x(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (rng.coin()) x.flip(j);
  }
  const long long s = rng.coin() ? k : -k;
  const auto distance = static_cast<std::size_t>((static_cast<long long>(n) - s) / 2);
  // The first `distance` entries of a partial Fisher-Yates shuffle are a
  // uniform subset of that size.
  std::vector<std::size_t> idx(n);
  for (std::size_t j = 0; j < n; ++j) idx[j] = j;
  SignVector y = x;
  for (std::size_t i = 0; i < distance; ++i) {
    std::swap(idx[i], idx[i + static_cast<std::size_t>(rng.below(n - i))]);
    y.flip(idx[i]);
  }
  return {std::move(x), std::move(y)};
}

Protocol mod4_decider(long long k) {
  return [k](const SignVector& x, const SignVector& y, std::uint64_t) {
    auto r = mod4_protocol(x, y);
    if (mod4(k) == mod4(-k)) {
      r.outcome.output = Output::One;
    } else if (r.residue == mod4(k)) {
      r.outcome.output = Output::One;
    } else {
      r.outcome.output = Output::Zero;
    }
    return r.outcome;
  };
}

Protocol constant_protocol(Output value) {
  return [value](const SignVector&, const SignVector&, std::uint64_t) {
    ProtocolOutcome o;
    o.output = value;
    if (value != Output::Abort) o.transcript.push_back(value == Output::One);
    return o;
  };
}

Protocol randomized_gh_protocol(long long k, std::size_t m, std::size_t abort_threshold) {
  return [=](const SignVector& x, const SignVector& y, std::uint64_t seed) {
    return randomized_gh(x, y, k, m, abort_threshold, seed);
  };
}

double wilson_halfwidth(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return 0.0;
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double z2 = z * z;
  return z / (1.0 + z2 / n) * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
}

SuccessEstimate estimate_success(const Protocol& protocol, std::size_t n, long long k, std::uint64_t trials,
                                 std::uint64_t seed, unsigned jobs) {
  if (trials < 100) throw ValidationError("estimate_success: trials must be at least 100");
  check_promise(n, k, "estimate_success");
  const std::size_t chunk = 256;
  const std::size_t chunks = (trials + chunk - 1) / chunk;
  std::vector<std::uint64_t> succ(chunks, 0);
  std::vector<std::uint64_t> aborts(chunks, 0);
  parallel_chunks(trials, chunk, jobs, [&](std::size_t begin, std::size_t end, std::size_t c) {
    for (std::size_t i = begin; i < end; ++i) {
      const std::uint64_t trial_seed = seed ^ static_cast<std::uint64_t>(i);
      const auto [x, y] = sample_Unk(n, k, trial_seed);
      const auto o = protocol(x, y, mix_seed(trial_seed, 1));
      if (o.output == Output::Abort) ++aborts[c];
      if (matches(o.output, egh_eval(x, y, k))) ++succ[c];
    }
  });
  SuccessEstimate e;
  e.trials = trials;
  for (std::size_t c = 0; c < chunks; ++c) {
    e.successes += succ[c];
    e.aborts += aborts[c];
  }
  e.rate = static_cast<double>(e.successes) / static_cast<double>(trials);
  e.ci_halfwidth = wilson_halfwidth(e.successes, trials);
  return e;
}

ExactSuccess exact_success(const Protocol& protocol, std::size_t n, long long k, std::uint64_t seed) {
  if (n < 1 || n > 12) throw InfeasibleError("exact_success: n must lie in [1, 12]");
  check_promise(n, k, "exact_success");
  ExactSuccess r;
  const std::uint64_t size = std::uint64_t{1} << n;
  for (std::uint64_t xm = 0; xm < size; ++xm) {
    const auto x = SignVector::from_mask(xm, n);
    for (std::uint64_t ym = 0; ym < size; ++ym) {
      const long long ip = static_cast<long long>(n) - 2 * std::popcount(xm ^ ym);
      if (ip != k && ip != -k) continue;
      const auto y = SignVector::from_mask(ym, n);
      const auto o = protocol(x, y, seed ^ r.pairs);
      if (o.output == Output::Abort) ++r.aborts;
      if (matches(o.output, egh_eval(x, y, k))) ++r.successes;
      ++r.pairs;
    }
  }
  r.rate = Rational(r.successes, r.pairs);
  return r;
}

std::string output_name(Output o) {
  switch (o) {
    case Output::Zero:
      return "0";
    case Output::One:
      return "1";
    case Output::Abort:
      return "abort";
  }
  return "abort";
}

}  // namespace anticonc
