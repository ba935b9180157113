#pragma once

// Batch driver: one ExperimentConfig names a subcommand and its options; the
// run writes the subcommand's CSV and a JSON sidecar echoing the config.

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace anticonc {

struct ExperimentConfig {
  std::string subcommand;
  /// Long option name (without dashes) -> value as given on the command line.
  std::map<std::string, std::string> options;

  friend bool operator==(const ExperimentConfig&, const ExperimentConfig&) = default;
};

nlohmann::json to_json(const ExperimentConfig& config);
/// Accepts a sidecar written by run_experiment (extra keys are ignored).
ExperimentConfig config_from_json(const nlohmann::json& j);

/// dist, fourier, census, structure, mu, protocol, params.
const std::vector<std::string>& subcommands();

/// Runs the experiment. The CSV goes to options["out"] (stdout when absent)
/// and the sidecar to options["json"], defaulting to out + ".json".
/// A one-line summary goes to `log`, diagnostics to `err`.
/// Returns 0 on success, 2 on invalid input, 3 when the exact computation is
/// too large.
int run_experiment(const ExperimentConfig& config, std::ostream& log, std::ostream& err);

}  // namespace anticonc
