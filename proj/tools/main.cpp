// Command-line driver: every subcommand fills an ExperimentConfig and hands it
// to run_experiment, so a run can be replayed from its JSON sidecar.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "anticonc/common.hpp"
#include "anticonc/experiment.hpp"

namespace {

using OptionList = std::vector<std::pair<std::string, std::string>>;

const std::map<std::string, std::pair<std::string, OptionList>>& command_table() {
  static const std::map<std::string, std::pair<std::string, OptionList>> table{
      {"dist",
       {"Exact law of <X,Y> (or <x,Y> with --x) as k,count,total",
        {{"a", "set spec for X (required)"},
         {"b", "set spec for Y (default: same as --a)"},
         {"x", "fixed integer direction, comma separated; uses --b (or --a) as the Y set"},
         {"step", "smoothness-gap step reported on the log line (default 4)"}}}},
      {"fourier",
       {"Characteristic function of <x,Y> on a theta grid, plus the star bound",
        {{"b", "set spec for Y (required)"},
         {"x", "integer direction, comma separated (default all ones)"},
         {"thetas", "comma separated turn fractions"},
         {"grid", "evaluate at m/grid for m < grid (default 16)"},
         {"nodes", "quadrature nodes for the star bound (default 65536)"}}}},
      {"census",
       {"Count directions whose characteristic function exceeds the decay bound",
        {{"b", "set spec for Y (required)"},
         {"theta", "turn fraction (default 0.125)"},
         {"delta", "slack delta; lambda = delta/6 (default 0.3)"},
         {"lambda", "entropy parameter (overrides --delta, delta = 6 lambda)"},
         {"c", "decay constant override"},
         {"mode", "exhaustive (n <= 16) or sampled"},
         {"count", "directions to sample in sampled mode (default 1000)"}}}},
      {"structure",
       {"r_ell, R_{C,ell}, R_C and mu_C for a difference profile, one row per ell",
        {{"d", "differences, comma separated"},
         {"twocube", "twocube:@path spec"},
         {"sidon", "use the symmetric two-cube over the first N greedy Sidon numbers"},
         {"C", "Halasz constant C (default 1)"},
         {"ell-max", "largest ell (default 3)"},
         {"nu-count", "size of the nu grid 2^-i (default 40)"}}}},
      {"mu",
       {"mu_C for a difference profile (the minimizing ell row only)",
        {{"d", "differences, comma separated"},
         {"twocube", "twocube:@path spec"},
         {"sidon", "use the symmetric two-cube over the first N greedy Sidon numbers"},
         {"C", "Halasz constant C (default 1)"},
         {"ell-max", "largest ell (default 3)"},
         {"nu-count", "size of the nu grid 2^-i (default 40)"}}}},
      {"protocol",
       {"Success rate of a protocol for EGH_{n,k} on U_{n,k}",
        {{"protocol", "mod4, randomized, const0 or const1 (required)"},
         {"n", "dimension (required)"},
         {"k", "gap (required)"},
         {"m", "samples for the randomized protocol (default ceil(20 n^2 / k^2))"},
         {"abort", "abort threshold (default ceil((1-beta) n) - 1)"},
         {"beta", "beta for the default abort threshold (default 0)"},
         {"trials", "Monte-Carlo trials (default 10000)"},
         {"exact", "true to enumerate the whole support (n <= 12)"}}}},
      {"params",
       {"Solve H(1/log2(1/kappa)) = tau + H(tau) = lambda",
        {{"lambda", "comma separated values in (0, 1] (default 1)"}, {"c", "decay constant override"}}}},
  };
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact anti-concentration experiments for inner products of sign vectors"};
  app.set_version_flag("--version", std::string(anticonc::kVersion));
  app.require_subcommand(1);

  std::map<std::string, std::map<std::string, std::string>> values;
  std::map<std::string, std::vector<std::pair<std::string, CLI::Option*>>> handles;
  for (const auto& [name, entry] : command_table()) {
    auto* sub = app.add_subcommand(name, entry.first);
    auto& store = values[name];
    auto add = [&](const std::string& key, const std::string& help) {
      handles[name].emplace_back(key, sub->add_option("--" + key, store[key], help));
    };
    for (const auto& [key, help] : entry.second) add(key, help);
    add("seed", "seed for all randomness (default 0)");
    add("jobs", "worker threads (default: all cores)");
    add("out", "CSV output path (default: stdout)");
    add("json", "JSON sidecar path (default: <out>.json)");
  }

  std::string replay_path;
  auto* replay = app.add_subcommand("replay", "Rerun the experiment recorded in a JSON sidecar");
  replay->add_option("--config", replay_path, "sidecar path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  anticonc::ExperimentConfig config;
  if (replay->parsed()) {
    std::ifstream in(replay_path);
    if (!in) {
      std::cerr << "error: cannot open '" << replay_path << "'\n";
      return 2;
    }
    try {
      config = anticonc::config_from_json(nlohmann::json::parse(in));
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  } else {
    for (const auto& [name, options] : handles) {
      if (!app.got_subcommand(name)) continue;
      config.subcommand = name;
      for (const auto& [key, opt] : options) {
        if (opt->count() > 0) config.options[key] = values[name][key];
      }
    }
  }
  return anticonc::run_experiment(config, std::cout, std::cerr);
}
