#include <doctest.h>

#include <cmath>
#include <random>

#include "cmpairs/checks.hpp"
#include "cmpairs/dynamics.hpp"

using namespace cmpairs;

namespace {

const Lattice& lat() {
  static Lattice l({1.0, 0.0}, {0.0, 1.0});
  return l;
}

}  // namespace

TEST_CASE("hamiltonians: single particle (empty interaction sums)") {
  const Complex c{0.4, -0.3};
  CMState s;
  s.x = {Complex{0.2, 0.1}};
  s.p = {c};
  const auto h = hamiltonians(lat(), s);
  CHECK(std::abs(h[0] + c) < 1e-15);
  CHECK(std::abs(h[1] - c * c) < 1e-15);
  CHECK(std::abs(h[2] + c * c * c) < 1e-15);
}

TEST_CASE("hamiltonians: two particles at rest") {
  CMState s;
  s.x = {Complex{0.15, 0.0}, Complex{0.7, 0.4}};
  s.p = {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
  const auto h = hamiltonians(lat(), s);
  // Both ordered pairs contribute and wp is even.
  CHECK(rel_err(h[1], -2.0 * wp(lat(), s.x[0] - s.x[1])) < 1e-14);
  CHECK(std::abs(h[2]) < 1e-12);
}

TEST_CASE("flow_rhs: first flow is rigid translation") {
  std::mt19937_64 rng(3);
  const CMState s = random_cm_state(lat(), 4, rng);
  const Tangent t = flow_rhs(lat(), 1, s);
  for (int i = 0; i < 4; ++i) {
    CHECK(t.dx[i] == Complex{-1.0, 0.0});
    CHECK(t.dp[i] == Complex{0.0, 0.0});
  }
  CHECK_THROWS_AS(flow_rhs(lat(), 4, s), std::invalid_argument);
}

TEST_CASE("flow_rhs: third flow, single particle") {
  CMState s;
  s.x = {Complex{0.2, 0.3}};
  s.p = {Complex{0.5, -0.2}};
  const Tangent t = flow_rhs(lat(), 3, s);
  CHECK(std::abs(t.dx[0] + 3.0 * s.p[0] * s.p[0]) < 1e-15);
  CHECK(std::abs(t.dp[0]) == 0.0);
}

TEST_CASE("flow_rhs: translation invariance") {
  std::mt19937_64 rng(5);
  const CMState s = random_cm_state(lat(), 4, rng);
  CMState shifted = s;
  const Complex c{0.137, -0.29};
  for (Complex& x : shifted.x) x += c;
  for (const int flow : {2, 3}) {
    const Tangent a = flow_rhs(lat(), flow, s);
    const Tangent b = flow_rhs(lat(), flow, shifted);
    for (int i = 0; i < 4; ++i) {
      CHECK(std::abs(a.dx[i] - b.dx[i]) < 1e-11);
      CHECK(std::abs(a.dp[i] - b.dp[i]) < 1e-11);
    }
  }
}

TEST_CASE("flow_rhs matches gradients of the hamiltonians") {
  // Pins the sign conventions: dx = dH/dp, dp = -dH/dx by central differences.
  std::mt19937_64 rng(7);
  const CMState s = random_cm_state(lat(), 3, rng);
  const double h = 1e-5;
  for (const int flow : {2, 3}) {
    const Tangent t = flow_rhs(lat(), flow, s);
    for (int i = 0; i < 3; ++i) {
      CMState sp = s, sm = s;
      sp.p[i] += h;
      sm.p[i] -= h;
      const Complex dhdp =
          (hamiltonians(lat(), sp)[flow - 1] - hamiltonians(lat(), sm)[flow - 1]) / (2.0 * h);
      CHECK(rel_err(t.dx[i], dhdp) < 1e-6);

      CMState xp = s, xm = s;
      xp.x[i] += h;
      xm.x[i] -= h;
      const Complex dhdx =
          (hamiltonians(lat(), xp)[flow - 1] - hamiltonians(lat(), xm)[flow - 1]) / (2.0 * h);
      CHECK(rel_err(t.dp[i], -dhdx) < 1e-6);
    }
  }
}

TEST_CASE("hamiltonians conserved along the integrated flows") {
  for (const auto& c : integrability_checks(lat(), 101)) {
    INFO(c.name, " measured ", c.measured);
    CHECK(c.pass);
  }
}

TEST_CASE("near-collision aborts with a singular-argument error") {
  CMState s;
  s.x = {Complex{0.0, 0.0}, Complex{1e-9, 0.0}};
  s.p = {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
  CHECK_THROWS_AS(hamiltonians(lat(), s), SingularArgument);
  CHECK_THROWS_AS(flow_rhs(lat(), 3, s), SingularArgument);
  CHECK(min_pair_distance(lat(), s) < lat().singular_radius());
}
