// Acceptance gate: every release-blocking property at its stated tolerance,
// one pass/fail line per criterion. Exit status is the number of failed
// criteria (0 = all green).

#include <chrono>
#include <cstdio>
#include <iostream>
#include <vector>

#include "cmpairs/checks.hpp"

using namespace cmpairs;

namespace {

struct Criterion {
  int id;
  const char* title;
  std::vector<CheckResult> results;
};

void append(std::vector<CheckResult>& dst, std::vector<CheckResult> src) {
  for (auto& c : src) dst.push_back(std::move(c));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  // Test lattice: periods (2, 2i). A second, skew lattice backs the identity
  // criteria so nothing silently relies on the square symmetry.
  const Lattice square({1.0, 0.0}, {0.0, 1.0});
  const Lattice skew({1.1, 0.0}, {0.4, 1.3});
  const unsigned seed = 20210;

  std::vector<Criterion> criteria;

  {
    Criterion c{1, "elliptic identities and lattice-sum cross-check", {}};
    append(c.results, elliptic_identity_checks(square, seed));
    append(c.results, elliptic_identity_checks(skew, seed + 1));
    append(c.results, elliptic_oracle_checks(square, seed + 2));
    append(c.results, elliptic_oracle_checks(skew, seed + 3));
    criteria.push_back(std::move(c));
  }
  {
    Criterion c{2, "Phi Laurent expansion coefficients", {}};
    append(c.results, phi_expansion_checks(square, seed + 4));
    append(c.results, phi_expansion_checks(skew, seed + 5));
    criteria.push_back(std::move(c));
  }
  criteria.push_back({3, "H1,H2,H3 conserved along t2 and t3 flows, N in {2,4,6}",
                      integrability_checks(square, seed + 6)});
  criteria.push_back({4, "pair stickiness under the t3 flow",
                      stickiness_checks(square, seed + 7)});
  criteria.push_back({5, "projected full flow converges to the reduced flow, n in {1,2,3}",
                      reduction_convergence_checks(square, seed + 8)});
  criteria.push_back({6, "second-order pole equations consistent with the reduced flow",
                      residual_checks(square, seed + 9)});
  criteria.push_back({7, "pairing destroyed under the t2 flow at rate 4/eps",
                      t2_destruction_checks(square, seed + 10)});
  criteria.push_back({8, "spectral determinant limit (boundedness, n=1 closed form, n=1 locus)",
                      spectral_limit_checks(square, seed + 11)});
  criteria.push_back({9, "pole-dynamics determinant conserved along the reduced flow, n in {2,3}",
                      det_conservation_checks(square, seed + 12)});
  criteria.push_back({10, "zero-locus comparison of the two spectral curves (experiment)",
                      zero_locus_report_checks(square, seed + 13)});

  int failed_criteria = 0;
  for (const auto& c : criteria) {
    bool pass = true;
    for (const auto& r : c.results) pass = pass && r.pass;
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", c.id, c.title);
    for (const auto& r : c.results) {
      if (r.comparator == "reported") {
        std::printf("         - %s: %s\n", r.name.c_str(), r.note.c_str());
      } else {
        std::printf("         %s %s (measured %.3e %s %.3e%s%s)\n", r.pass ? "-" : "!",
                    r.name.c_str(), r.measured, r.comparator.c_str(), r.threshold,
                    r.note.empty() ? "" : "; ", r.note.c_str());
      }
    }
    if (!pass) ++failed_criteria;
  }

  const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("%d/%zu criteria passed in %.1f s\n", int(criteria.size()) - failed_criteria,
              criteria.size(), dt);
  return failed_criteria;
}
