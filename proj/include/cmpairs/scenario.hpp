#pragma once

#include <string>
#include <vector>

#include "cmpairs/checks.hpp"

namespace cmpairs {

// Exit codes of the command-line front end.
enum ExitCode : int { kExitOk = 0, kExitConfigInvalid = 2, kExitNumericalFailure = 3 };

// One experiment description, loaded from JSON. Complex numbers are encoded
// as [re, im] pairs. omega1/omega2 are the lattice half-periods.
struct ScenarioConfig {
  Complex omega1{1.0, 0.0};
  Complex omega2{0.0, 1.0};
  std::string mode;  // full | reduced | compare | spectral | selftest | selftest-elliptic

  int flow = 3;
  double t_end = 1.0;
  double tol = 1e-10;
  int sample_count = 101;  // trajectory output resolution

  std::vector<Complex> x0, p0;           // full mode initial state
  std::vector<Complex> rx0, ralpha0;     // reduced-state modes
  std::vector<double> eps_ladder;        // compare / spectral
  std::vector<Complex> z_grid, lambda_grid;

  std::string out_dir = ".";
  bool write_csv = true;
  bool write_json = true;
  unsigned long long seed = 1;
  int jobs = 0;  // 0: all cores

  std::string config_hash;  // stamped into outputs
};

// Parses and validates a config file; `mode_override` (from the CLI
// subcommand) must match the config's "mode" when both are present.
// Throws ConfigError on any problem.
ScenarioConfig load_config(const std::string& path, const std::string& mode_override);

// Defaults used when selftest modes run without a config file.
ScenarioConfig default_config(const std::string& mode);

// Runs the scenario, writing trajectory/report artifacts into out_dir.
// Returns an ExitCode; numerical failures are reported on `err` with the
// failing stage named.
int run_scenario(const ScenarioConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace cmpairs
