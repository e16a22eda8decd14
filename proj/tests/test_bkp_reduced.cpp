#include <doctest.h>

#include <cmath>
#include <random>

#include "cmpairs/bkp_reduced.hpp"
#include "cmpairs/checks.hpp"
#include "cmpairs/lattice_sum.hpp"

using namespace cmpairs;

namespace {

const Lattice& lat() {
  static Lattice l({1.0, 0.0}, {0.0, 1.0});
  return l;
}

}  // namespace

TEST_CASE("reduced_rhs: single pair moves on a straight line") {
  ReducedState r;
  r.x = {Complex{0.2, 0.1}};
  r.alpha = {Complex{0.3, -0.2}};
  const ReducedTangent t = reduced_rhs(lat(), r);
  CHECK(std::abs(t.dx[0] + 6.0 * r.alpha[0]) == 0.0);
  CHECK(std::abs(t.dalpha[0]) == 0.0);

  const Trajectory traj = integrate_reduced(lat(), r, 0.5, 1e-10);
  const ReducedState end = unpack_reduced(traj.states.back());
  CHECK(std::abs(end.x[0] - (r.x[0] - 6.0 * r.alpha[0] * 0.5)) < 1e-12);
  CHECK(std::abs(end.alpha[0] - r.alpha[0]) < 1e-13);
}

TEST_CASE("reduced_rhs: two-pair fixture against frozen reference values") {
  ReducedState r;
  r.x = {Complex{0.1, 0.0}, Complex{0.6, 0.4}};
  r.alpha = {Complex{0.05, 0.0}, Complex{0.0, -0.02}};
  const ReducedTangent t = reduced_rhs(lat(), r);

  // Frozen from a direct transcription evaluated with the lattice-sum path.
  CHECK(rel_err(t.dx[0], Complex{3.2024268938778215, -12.896740598075981}) < 1e-12);
  CHECK(rel_err(t.dx[1], Complex{3.502426893877822, -12.776740598075982}) < 1e-12);
  CHECK(rel_err(t.dalpha[0], Complex{-213.08275021834388, 52.70051192237028}) < 1e-12);
  CHECK(rel_err(t.dalpha[1], Complex{213.64395081338128, -47.392838863644755}) < 1e-12);

  // Live re-evaluation through the reference sums.
  const Complex d = r.x[0] - r.x[1];
  const Complex w0 = lattice_sum::wp(lat(), d);
  const Complex w1 = lattice_sum::wp(lat(), d, 1);
  const Complex w3 = lattice_sum::wp(lat(), d, 3);
  CHECK(rel_err(t.dx[0], -6.0 * r.alpha[0] + 6.0 * w0) < 1e-6);
  CHECK(rel_err(t.dalpha[0], -12.0 * r.alpha[0] * w1 + w3) < 1e-6);
}

TEST_CASE("reduced_rhs: translation invariance") {
  std::mt19937_64 rng(41);
  const ReducedState r = random_reduced_state(lat(), 3, rng);
  ReducedState shifted = r;
  for (Complex& x : shifted.x) x += Complex{0.21, -0.13};
  const ReducedTangent a = reduced_rhs(lat(), r);
  const ReducedTangent b = reduced_rhs(lat(), shifted);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(a.dalpha[i] - b.dalpha[i]) < 1e-8);
    CHECK(std::abs((a.dx[i] - b.dx[i])) < 1e-11);
  }
}

TEST_CASE("second-order residual: single pair with zero acceleration") {
  const std::vector<Complex> x{Complex{0.3, 0.2}};
  const std::vector<Complex> xdot{Complex{-1.2, 0.4}};
  const std::vector<Complex> xddot{Complex{0.0, 0.0}};
  const auto res = second_order_residual(lat(), x, xdot, xddot);
  CHECK(std::abs(res[0]) == 0.0);

  CHECK_THROWS_AS(second_order_residual(lat(), x, xdot, std::vector<Complex>{}), LengthMismatch);
}

TEST_CASE("residual forms agree and vanish along trajectories") {
  for (const auto& c : residual_checks(lat(), 307)) {
    INFO(c.name, " measured ", c.measured);
    CHECK(c.pass);
  }
}

TEST_CASE("finite-difference acceleration cross-check") {
  // Secondary check of the analytic chain-rule acceleration: central
  // difference of the flow velocity around t = h, at loose relative tolerance.
  std::mt19937_64 rng(43);
  const ReducedState r0 = random_reduced_state(lat(), 2, rng);
  const double h = 1e-5;
  IntegrateOptions opts;
  opts.sample_times = {h, 2.0 * h};
  const Trajectory traj = integrate_reduced(lat(), r0, 2.0 * h, 1e-12, opts);
  const ReducedTangent t0 = reduced_rhs(lat(), r0);
  const ReducedTangent t2 = reduced_rhs(lat(), unpack_reduced(traj.states[1]));
  const auto acc = reduced_accel(lat(), unpack_reduced(traj.states[0]));
  for (int i = 0; i < 2; ++i) {
    const Complex fd = (t2.dx[i] - t0.dx[i]) / (2.0 * h);
    CHECK(rel_err(fd, acc[i]) < 1e-5);
  }
}

TEST_CASE("center of mass moves by the computed aggregate rate") {
  // d/dt sum x_i = -6 sum alpha_i + 12 sum_{i<j} wp(x_i - x_j), an algebraic
  // identity of the implementation (the ordered pair sum counts each wp twice).
  std::mt19937_64 rng(47);
  const ReducedState r = random_reduced_state(lat(), 3, rng);
  const ReducedTangent t = reduced_rhs(lat(), r);
  Complex lhs{0.0, 0.0};
  for (const Complex& v : t.dx) lhs += v;
  Complex rhs{0.0, 0.0};
  for (const Complex& a : r.alpha) rhs -= 6.0 * a;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) rhs += 12.0 * wp(lat(), r.x[i] - r.x[j]);
  }
  CHECK(std::abs(lhs - rhs) < 1e-12);
}
