#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "cmpairs/bkp_reduced.hpp"
#include "cmpairs/checks.hpp"
#include "cmpairs/lattice_sum.hpp"
#include "cmpairs/pair_manifold.hpp"

using namespace cmpairs;

namespace {

const Lattice& lat() {
  static Lattice l({1.0, 0.0}, {0.0, 1.0});
  return l;
}

ReducedState fixture_n2() {
  ReducedState r;
  r.x = {Complex{0.1, 0.0}, Complex{0.6, 0.4}};
  r.alpha = {Complex{0.05, 0.0}, Complex{0.0, -0.02}};
  return r;
}

}  // namespace

TEST_CASE("beta coefficients: single pair has empty sums") {
  ReducedState r;
  r.x = {Complex{0.3, 0.1}};
  r.alpha = {Complex{0.2, 0.0}};
  const PairEmbedding pe = beta_coeffs(lat(), r);
  CHECK(std::abs(pe.beta0[0]) == 0.0);
  CHECK(std::abs(pe.beta1[0]) == 0.0);
  CHECK(std::abs(pe.beta2[0]) == 0.0);
}

TEST_CASE("beta coefficients: two-pair fixture against the lattice-sum reference") {
  const ReducedState r = fixture_n2();
  const PairEmbedding pe = beta_coeffs(lat(), r);
  const Complex d = r.x[0] - r.x[1];  // -0.5 - 0.4i

  // Frozen from the reference evaluator: beta0 = -wp'(d)/2. The live sum is
  // limited by its own truncation tail at this radius (~1e-7).
  CHECK(rel_err(pe.beta0[0], Complex{1.928354754689373, 3.651718980395522}) < 1e-12);
  CHECK(rel_err(pe.beta0[0], -0.5 * lattice_sum::wp(lat(), d, 1)) < 1e-6);
  // beta2 = -alpha*beta0 - wp'''(d)/12, frozen likewise.
  CHECK(rel_err(pe.beta2[0], Complex{17.853313589263127, -4.209123377844414}) < 1e-12);

  // Unit gauge: beta1 vanishes identically.
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 5; ++rep) {
    const ReducedState rr = random_reduced_state(lat(), 2 + int(rng() % 2), rng);
    for (const Complex& b1 : beta_coeffs(lat(), rr).beta1) CHECK(std::abs(b1) == 0.0);
  }
}

TEST_CASE("embed: explicit single-pair momenta") {
  ReducedState r;
  r.x = {Complex{0.3, 0.0}};
  r.alpha = {Complex{0.2, 0.0}};
  const double eps = 1e-3;
  const CMState s = embed(lat(), r, eps);
  REQUIRE(s.n_particles() == 2);
  CHECK(s.x[1] == s.x[0] + eps);
  // beta = 0 for a single pair: p1 = 1/eps + alpha*eps = 1000 + 2e-4 exactly.
  CHECK(std::abs(s.p[0] - Complex{1000.0002, 0.0}) < 1e-12);
  CHECK(std::abs(s.p[1] + Complex{1000.0002, 0.0}) < 1e-12);
}

TEST_CASE("project inverts embed exactly") {
  std::mt19937_64 rng(23);
  for (const int n : {1, 2, 3}) {
    const ReducedState r = random_reduced_state(lat(), n, rng);
    for (const double eps : {1e-2, 1e-3, 1e-4}) {
      const CMState s = embed(lat(), r, eps);
      const ReducedState back = project(s, eps);
      // Rounding the stored 1/eps momenta costs ulp(1/eps), and the alpha
      // recovery divides it by eps again: the round trip is exact up to
      // machine epsilon amplified by 1/eps^2.
      const double alpha_tol = 100.0 * std::numeric_limits<double>::epsilon() / (eps * eps);
      for (int i = 0; i < n; ++i) {
        CHECK(back.x[i] == r.x[i]);
        CHECK(std::abs(back.alpha[i] - r.alpha[i]) < alpha_tol);
      }
    }
  }
}

TEST_CASE("embedded momentum sums equal 2 beta eps^2") {
  const ReducedState r = fixture_n2();
  const PairEmbedding pe = beta_coeffs(lat(), r);
  const double eps = 5e-3;
  const CMState s = embed(lat(), r, eps);
  for (int i = 0; i < 2; ++i) {
    // The 1/eps parts cancel, leaving the sum accurate to ulp(1/eps).
    const Complex beta = pe.beta0[i] + pe.beta2[i] * eps * eps;
    CHECK(std::abs(s.p[2 * i] + s.p[2 * i + 1] - 2.0 * beta * eps * eps) < 1e-12);
  }
}

TEST_CASE("project: errors and linearity") {
  const ReducedState r = fixture_n2();
  const double eps = 1e-3;
  CMState s = embed(lat(), r, eps);

  CMState odd;
  odd.x = {Complex{0.0, 0.0}};
  odd.p = {Complex{0.0, 0.0}};
  CHECK_THROWS_AS(project(odd, eps), OddParticleCount);

  // Perturbing p_{2i} by +1 shifts alpha_i by -1/(2 eps).
  const ReducedState before = project(s, eps);
  s.p[1] += 1.0;
  const ReducedState after = project(s, eps);
  CHECK(rel_err(after.alpha[0] - before.alpha[0], Complex{-1.0 / (2.0 * eps), 0.0}) < 1e-9);
  CHECK(std::abs(after.alpha[1] - before.alpha[1]) == 0.0);
}

TEST_CASE("embed preconditions") {
  const ReducedState r = fixture_n2();
  CHECK_THROWS_AS(embed(lat(), r, 1e-8), EpsilonTooSmall);

  // Pair positions closer than eps across pairs collide in the embedding.
  ReducedState clash;
  clash.x = {Complex{0.1, 0.0}, Complex{0.1 + 5e-3, 0.0}};
  clash.alpha = {Complex{0.0, 0.0}, Complex{0.0, 0.0}};
  CHECK_THROWS_AS(embed(lat(), clash, 5e-3), SingularArgument);
}

TEST_CASE("single pair: separation rate vanishes to roundoff") {
  ReducedState r;
  r.x = {Complex{0.3, 0.1}};
  r.alpha = {Complex{0.2, -0.1}};
  const double eps = 1e-3;
  const CMState s = embed(lat(), r, eps);
  const Tangent t3 = flow_rhs(lat(), 3, s);
  // beta = 0 makes p2 = -p1 exactly, so 3(p1^2 - p2^2) = 0 and the wp terms
  // cancel pairwise; what remains is cancellation roundoff of order 1/eps^2 * ulp.
  CHECK(std::abs(t3.dx[1] - t3.dx[0]) < 1e-9);
  CHECK(std::abs(t3.dp[0] + t3.dp[1]) < 1e-12);
}

TEST_CASE("order-eps^3 closure reproduces the reduced flow") {
  // alpha_dot from the momentum expansion, with beta2 substituted, must equal
  // the first-order reduced vector field: -6 a S1 - 12 beta2 == -12 a S1 + S3.
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    const int n = 2 + int(rng() % 2);
    const ReducedState r = random_reduced_state(lat(), n, rng);
    const PairEmbedding pe = beta_coeffs(lat(), r);
    const ReducedTangent t = reduced_rhs(lat(), r);
    for (int i = 0; i < n; ++i) {
      Complex s1{0.0, 0.0};
      for (int j = 0; j < n; ++j) {
        if (j != i) s1 += wp(lat(), r.x[i] - r.x[j], 1);
      }
      const Complex adot = -6.0 * r.alpha[i] * s1 - 12.0 * pe.beta2[i];
      CHECK(rel_err(adot, t.dalpha[i]) < 1e-9);
    }
  }
}

TEST_CASE("stickiness report metrics and scalings") {
  const ReducedState r = fixture_n2();
  const std::vector<double> eps_list{8e-3, 4e-3, 2e-3};
  const StickinessReport rep = stickiness_report(lat(), r, eps_list, 0.05, 1e-11);
  REQUIRE(rep.entries.size() == 3);
  for (const auto& e : rep.entries) {
    INFO("eps = ", e.eps, " err = ", e.error);
    CHECK(e.integrated);
    // t2 flow tears the pair apart at rate 4/eps + O(eps).
    CHECK(std::abs(e.t2_sep_rate * e.eps - 4.0) < 0.05);
  }
  CHECK(rep.slope_psum_rate >= 1.9);
  // Separation deviation scales at least as eps^2 under the t3 flow.
  CHECK(rep.slope_sep_dev >= 1.9);

  for (const auto& c : stickiness_checks(lat(), 207)) {
    INFO(c.name, " measured ", c.measured);
    CHECK(c.pass);
  }
}
