#pragma once

#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "cmpairs/lax_spectral.hpp"

namespace cmpairs {

// One verdict row: pass iff `measured cmp threshold` (cmp is "<=" or ">=").
// Experiments that only report carry comparator "reported" and always pass.
struct CheckResult {
  std::string name;
  bool pass = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string comparator = "<=";
  std::string note;
};

CheckResult check_leq(std::string name, double measured, double threshold, std::string note = "");
CheckResult check_geq(std::string name, double measured, double threshold, std::string note = "");

// Deterministic sample helpers (all draws consume the passed engine).
Complex random_cell_point(const Lattice& lat, std::mt19937_64& rng, double min_dist);
CMState random_cm_state(const Lattice& lat, int n_particles, std::mt19937_64& rng);
ReducedState random_reduced_state(const Lattice& lat, int n_pairs, std::mt19937_64& rng);

// Identity suites. Thresholds are fixed in the implementations.
std::vector<CheckResult> elliptic_identity_checks(const Lattice& lat, unsigned seed);
std::vector<CheckResult> elliptic_oracle_checks(const Lattice& lat, unsigned seed);
std::vector<CheckResult> phi_expansion_checks(const Lattice& lat, unsigned seed);
std::vector<CheckResult> integrability_checks(const Lattice& lat, unsigned seed);
std::vector<CheckResult> stickiness_checks(const Lattice& lat, unsigned seed, int jobs = 0);
std::vector<CheckResult> reduction_convergence_checks(const Lattice& lat, unsigned seed,
                                                      int jobs = 0);
std::vector<CheckResult> residual_checks(const Lattice& lat, unsigned seed);
std::vector<CheckResult> t2_destruction_checks(const Lattice& lat, unsigned seed);
std::vector<CheckResult> spectral_limit_checks(const Lattice& lat, unsigned seed);
std::vector<CheckResult> det_conservation_checks(const Lattice& lat, unsigned seed);
std::vector<CheckResult> zero_locus_report_checks(const Lattice& lat, unsigned seed);

// Pretty pass/fail table; returns the number of failed rows.
int print_check_table(const std::vector<CheckResult>& results, std::ostream& os);

nlohmann::json checks_to_json(const std::vector<CheckResult>& results);

}  // namespace cmpairs
