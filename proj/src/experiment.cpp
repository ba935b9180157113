#include "anticonc/experiment.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include "anticonc/exact_dist.hpp"
#include "anticonc/fourier.hpp"
#include "anticonc/halasz.hpp"
#include "anticonc/protocols.hpp"
#include "anticonc/set_spec.hpp"
#include "anticonc/two_cube.hpp"
#include "anticonc/vertex_set.hpp"

namespace anticonc {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Read-only view of the options that remembers which keys the subcommand accepts.
class Options {
 public:
  Options(const ExperimentConfig& config, std::set<std::string> allowed) : opts_(config.options) {
    allowed.insert({"out", "json", "seed", "jobs"});
    for (const auto& [key, value] : opts_) {
      if (!allowed.contains(key)) {
        throw ValidationError("option --" + key + " is not accepted by '" + config.subcommand + "'");
      }
    }
  }

  bool has(const std::string& key) const { return opts_.contains(key); }

  std::string str(const std::string& key) const {
    const auto it = opts_.find(key);
    if (it == opts_.end()) throw ValidationError("missing required option --" + key);
    return it->second;
  }
  std::string str(const std::string& key, const std::string& fallback) const {
    return has(key) ? str(key) : fallback;
  }

  long long integer(const std::string& key, std::optional<long long> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ValidationError("missing required option --" + key);
    }
    return parse_integer(key, str(key));
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) const {
    if (!has(key)) return fallback;
    const auto text = str(key);
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ValidationError("--" + key + ": expected a nonnegative integer, got '" + text + "'");
    }
    return v;
  }

  double real(const std::string& key, std::optional<double> fallback = std::nullopt) const {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ValidationError("missing required option --" + key);
    }
    return parse_real(key, str(key));
  }

  template <class T, class Parse>
  std::vector<T> list(const std::string& key, Parse parse) const {
    std::vector<T> out;
    std::istringstream in(str(key));
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse(key, item));
    if (out.empty()) throw ValidationError("--" + key + ": empty list");
    return out;
  }

  static long long parse_integer(const std::string& key, const std::string& text) {
    long long v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
      throw ValidationError("--" + key + ": expected an integer, got '" + text + "'");
    }
    return v;
  }

  static double parse_real(const std::string& key, const std::string& text) {
    double v = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
      throw ValidationError("--" + key + ": expected a finite number, got '" + text + "'");
    }
    return v;
  }

 private:
  const std::map<std::string, std::string>& opts_;
};

VertexSet load_set(const std::string& text) {
  const auto spec = parse_set_spec(text);
  if (spec.variant == SetVariant::TwoCube) throw ValidationError("a two-cube spec cannot be used as a vertex set");
  return materialize(spec);
}

unsigned jobs_of(const Options& o) { return static_cast<unsigned>(o.unsigned_integer("jobs", 0)); }

Direction direction_of(const Options& o, int n) {
  if (!o.has("x")) return Direction(static_cast<std::size_t>(n), 1);
  auto x = o.list<long long>("x", Options::parse_integer);
  if (static_cast<int>(x.size()) != n) throw ValidationError("--x: length differs from the set dimension");
  return x;
}

std::string ratio(const BigInt& num, const BigInt& den) {
  std::ostringstream s;
  s << num << '/' << den;
  return s.str();
}

std::string run_dist(const Options& o, std::ostream& log) {
  const auto A = load_set(o.str("a"));
  const auto B = o.has("b") ? load_set(o.str("b")) : A;
  const auto d = o.has("x") ? direction_distribution(direction_of(o, B.dimension()), B)
                            : pair_distribution(A, B, PairMethod::Auto, jobs_of(o));
  BigInt best = 0;
  for (const auto& c : d.counts()) best = std::max(best, c);
  const auto step = o.integer("step", 4);
  const auto gap = smoothness_gap(d, step);
  log << "concentration=" << ratio(best, d.total()) << " smoothness_gap_step" << step << '='
      << boost::multiprecision::numerator(gap) << '/' << boost::multiprecision::denominator(gap) << '\n';
  return d.to_csv();
}

std::string run_fourier(const Options& o, std::ostream& log) {
  const auto B = load_set(o.str("b"));
  const auto x = direction_of(o, B.dimension());
  const auto d = direction_distribution(x, B);
  std::vector<double> thetas;
  if (o.has("thetas")) {
    thetas = o.list<double>("thetas", Options::parse_real);
  } else {
    const auto grid = o.integer("grid", 16);
    if (grid < 1 || grid > 1'000'000) throw ValidationError("--grid must lie in [1, 10^6]");
    for (long long m = 0; m < grid; ++m) thetas.push_back(static_cast<double>(m) / static_cast<double>(grid));
  }
  std::ostringstream csv;
  csv << "theta,re,im,abs\n";
  for (auto t : thetas) {
    const auto f = characteristic_function(d, Angle::turns(t));
    csv << fmt(t) << ',' << fmt(f.real()) << ',' << fmt(f.imag()) << ',' << fmt(std::abs(f)) << '\n';
  }
  const auto nodes = static_cast<std::size_t>(o.integer("nodes", 1 << 16));
  const auto star = star_bound(x, B, nodes);
  const auto conc = concentration_probability(d);
  log << "star_bound=" << fmt(star.value) << " eps_quad=" << fmt(star.error)
      << " concentration=" << fmt(conc.convert_to<double>()) << '\n';
  return csv.str();
}

std::string run_census(const Options& o, std::ostream& log) {
  const auto B = load_set(o.str("b"));
  const double theta = o.real("theta", 0.125);
  double delta = o.real("delta", 0.3);
  double lambda = delta / 6.0;
  if (o.has("lambda")) {
    lambda = o.real("lambda");
    delta = 6.0 * lambda;
  }
  std::optional<double> c_override;
  if (o.has("c")) c_override = o.real("c");
  const auto params = solve_parameters(lambda, c_override);
  const auto mode_name = o.str("mode", "exhaustive");
  CensusMode mode;
  if (mode_name == "sampled") {
    mode = CensusMode::sampled(o.unsigned_integer("seed", 0), o.unsigned_integer("count", 1000));
  } else if (mode_name != "exhaustive") {
    throw ValidationError("--mode must be 'exhaustive' or 'sampled'");
  }
  const auto r = tech_census(B, Angle::turns(theta), params, mode, jobs_of(o));
  const int n = B.dimension();
  const double beta = B.density_exponent();
  const double bound = std::exp2(n * (1.0 - beta + delta));
  std::ostringstream csv;
  csv << "theta,c,n,beta,tested,violations,bound_2^{n(1-beta+delta)}\n";
  csv << fmt(theta) << ',' << fmt(params.c) << ',' << n << ',' << fmt(beta) << ',' << r.tested << ','
      << r.violations << ',' << fmt(bound) << '\n';
  log << "violations=" << r.violations << " tested=" << r.tested << " threshold=" << fmt(r.threshold)
      << (r.violations.convert_to<double>() <= bound ? " within" : " exceeds") << " bound\n";
  return csv.str();
}

DifferenceProfile profile_of(const Options& o) {
  const int sources = int(o.has("d")) + int(o.has("twocube")) + int(o.has("sidon"));
  if (sources != 1) throw ValidationError("give exactly one of --d, --twocube, --sidon");
  if (o.has("d")) return DifferenceProfile(o.list<long long>("d", Options::parse_integer));
  if (o.has("sidon")) {
    const auto s = mian_chowla(static_cast<int>(o.integer("sidon")));
    return DifferenceProfile::of(TwoCube::symmetric(s));
  }
  const auto spec = parse_set_spec(o.str("twocube"));
  if (spec.variant != SetVariant::TwoCube) throw ValidationError("--twocube expects a twocube:@path spec");
  return DifferenceProfile::of(TwoCube::load(spec.path));
}

HalaszParams halasz_params_of(const Options& o) {
  HalaszParams p;
  p.C = o.real("C", 1.0);
  p.ell_max = static_cast<int>(o.integer("ell-max", 3));
  p.nu_grid = geometric_nu_grid(static_cast<int>(o.integer("nu-count", 40)));
  if (p.nu_grid.empty()) throw ValidationError("--nu-count must be positive");
  return p;
}

std::string run_structure(const Options& o, std::ostream& log, bool summary_only) {
  const auto d = profile_of(o);
  const auto params = halasz_params_of(o);
  const auto R = halasz_R(d, params);
  const auto mu = mu_C_from_R(R.R, d.size(), params.C, params.nu_grid);
  const std::string nu_star = mu.nu_star ? fmt(*mu.nu_star) : "";
  std::ostringstream csv;
  csv << "n,ell,r_ell,R_Cl,R_C,mu_C,nu_star\n";
  for (int ell = 1; ell <= params.ell_max; ++ell) {
    if (summary_only && ell != R.argmin_ell) continue;
    csv << d.size() << ',' << ell << ',' << R.r[ell - 1] << ',' << fmt(R.R_ell[ell - 1]) << ',' << fmt(R.R) << ','
        << fmt(mu.mu) << ',' << nu_star << '\n';
  }
  log << "R_C=" << fmt(R.R) << " argmin_ell=" << R.argmin_ell << " mu_C=" << fmt(mu.mu)
      << " all_distinct=" << d.all_distinct() << " weak_sidon=" << d.weak_sidon() << '\n';
  return csv.str();
}

std::string run_protocol(const Options& o, std::ostream& log) {
  const auto name = o.str("protocol");
  const auto n = static_cast<std::size_t>(o.integer("n"));
  const auto k = o.integer("k");
  std::size_t m = 0;
  Protocol protocol;
  if (name == "mod4") {
    protocol = mod4_decider(k);
  } else if (name == "const0") {
    protocol = constant_protocol(Output::Zero);
  } else if (name == "const1") {
    protocol = constant_protocol(Output::One);
  } else if (name == "randomized") {
    if (k <= 0) throw ValidationError("randomized protocol needs k > 0");
    m = o.has("m") ? static_cast<std::size_t>(o.integer("m")) : default_sample_count(n, static_cast<std::size_t>(k));
    const auto abort = o.has("abort") ? static_cast<std::size_t>(o.integer("abort"))
                                      : default_abort_threshold(n, o.real("beta", 0.0));
    protocol = randomized_gh_protocol(k, m, abort);
  } else {
    throw ValidationError("--protocol must be one of mod4, randomized, const0, const1");
  }
  const auto seed = o.unsigned_integer("seed", 0);
  std::ostringstream csv;
  csv << "protocol,n,k,m,trials,successes,aborts,rate,ci\n";
  if (o.str("exact", "false") == "true") {
    const auto r = exact_success(protocol, n, k, seed);
    csv << name << ',' << n << ',' << k << ',' << m << ',' << r.pairs << ',' << r.successes << ',' << r.aborts
        << ',' << fmt(r.rate.convert_to<double>()) << ",0\n";
    log << "exact_rate=" << boost::multiprecision::numerator(r.rate) << '/'
        << boost::multiprecision::denominator(r.rate) << '\n';
  } else {
    const auto e = estimate_success(protocol, n, k, o.unsigned_integer("trials", 10000), seed, jobs_of(o));
    csv << name << ',' << n << ',' << k << ',' << m << ',' << e.trials << ',' << e.successes << ',' << e.aborts
        << ',' << fmt(e.rate) << ',' << fmt(e.ci_halfwidth) << '\n';
    log << "rate=" << fmt(e.rate) << " ci=" << fmt(e.ci_halfwidth) << '\n';
  }
  return csv.str();
}

std::string run_params(const Options& o, std::ostream& log) {
  const auto lambdas = o.has("lambda") ? o.list<double>("lambda", Options::parse_real) : std::vector<double>{1.0};
  std::optional<double> c_override;
  if (o.has("c")) c_override = o.real("c");
  std::ostringstream csv;
  csv << "lambda,kappa,tau,c\n";
  for (auto lambda : lambdas) {
    const auto p = solve_parameters(lambda, c_override);
    csv << fmt(p.lambda) << ',' << fmt(p.kappa) << ',' << fmt(p.tau) << ',' << fmt(p.c) << '\n';
  }
  log << "solved " << lambdas.size() << " parameter set(s)\n";
  return csv.str();
}

std::string dispatch(const ExperimentConfig& config, std::ostream& log) {
  const auto& s = config.subcommand;
  if (s == "dist") return run_dist(Options(config, {"a", "b", "x", "step"}), log);
  if (s == "fourier") return run_fourier(Options(config, {"b", "x", "thetas", "grid", "nodes"}), log);
  if (s == "census") {
    return run_census(Options(config, {"b", "theta", "delta", "lambda", "c", "mode", "count"}), log);
  }
  if (s == "structure" || s == "mu") {
    return run_structure(Options(config, {"d", "twocube", "sidon", "C", "ell-max", "nu-count"}), log, s == "mu");
  }
  if (s == "protocol") {
    return run_protocol(Options(config, {"protocol", "n", "k", "m", "abort", "beta", "trials", "exact"}), log);
  }
  if (s == "params") return run_params(Options(config, {"lambda", "c"}), log);
  throw ValidationError("unknown subcommand '" + s + "'");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw ValidationError("failed to write '" + path + "'");
}

}  // namespace

nlohmann::json to_json(const ExperimentConfig& config) {
  nlohmann::json j;
  j["subcommand"] = config.subcommand;
  j["options"] = config.options;
  j["version"] = kVersion;
  return j;
}

ExperimentConfig config_from_json(const nlohmann::json& j) {
  try {
    ExperimentConfig c;
    c.subcommand = j.at("subcommand").get<std::string>();
    c.options = j.at("options").get<std::map<std::string, std::string>>();
    return c;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed experiment config: ") + e.what());
  }
}

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"dist", "fourier", "census", "structure", "mu", "protocol", "params"};
  return names;
}

int run_experiment(const ExperimentConfig& config, std::ostream& log, std::ostream& err) {
  try {
    const auto csv = dispatch(config, log);
    const auto out = config.options.find("out");
    if (out == config.options.end()) {
      log << csv;
    } else {
      write_file(out->second, csv);
    }
    std::string sidecar;
    if (const auto j = config.options.find("json"); j != config.options.end()) {
      sidecar = j->second;
    } else if (out != config.options.end()) {
      sidecar = out->second + ".json";
    }
    if (!sidecar.empty()) write_file(sidecar, to_json(config).dump(2) + "\n");
    return 0;
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace anticonc
