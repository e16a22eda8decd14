#pragma once

#include <span>
#include <string>
#include <vector>

#include "cmpairs/dynamics.hpp"

namespace cmpairs {

// Coordinates on the stuck-pair submanifold in the gauge where each pair has
// separation exactly eps: n pair positions (the odd-indexed particle
// coordinates) and n auxiliary momenta alpha_i.
struct ReducedState {
  std::vector<Complex> x;
  std::vector<Complex> alpha;
  int n_pairs() const { return int(x.size()); }
};

// Momentum-ansatz coefficients beta_i = beta0 + beta1*eps + beta2*eps^2.
// In the unit gauge beta1 vanishes identically.
struct PairEmbedding {
  double epsilon = 0.0;
  std::vector<Complex> beta0;
  std::vector<Complex> beta1;
  std::vector<Complex> beta2;
};

// beta0_i = -(1/2) sum_{j != i} wp'(x_i - x_j)
// beta1_i = 0
// beta2_i = -alpha_i beta0_i - (1/12) sum_{j != i} wp'''(x_i - x_j)
PairEmbedding beta_coeffs(const Lattice& lat, const ReducedState& r);

// Embed into the 2n-particle phase space:
//   x_{2i-1} = r_i,  x_{2i} = r_i + eps,
//   p_{2i-1} =  1/eps + alpha_i eps + beta_i eps^2,
//   p_{2i}   = -1/eps - alpha_i eps + beta_i eps^2.
// Throws EpsilonTooSmall for eps <= 10 * singular_radius and SingularArgument
// when the embedding would collide particles across pairs.
CMState embed(const Lattice& lat, const ReducedState& r, double eps);

// Algebraic inverse of the embedding (exact round trip):
//   x_i = x_{2i-1},  alpha_i = ((p_{2i-1} - p_{2i})/2 - 1/eps) / eps.
ReducedState project(const CMState& s, double eps);

struct StickinessEntry {
  double eps = 0.0;
  // t = 0 rates from the vector field on the embedded state.
  double t3_psum_rate = 0.0;   // max_i |d/dt (p_{2i-1} + p_{2i})|
  double t3_sep_rate = 0.0;    // max_i |d/dt (x_{2i} - x_{2i-1})|
  double t2_sep_rate = 0.0;    // same under the t2 flow (expected ~ 4/eps)
  // Maxima over the integrated t3 trajectory.
  double max_sep_dev = 0.0;    // max_t max_i |x_{2i} - x_{2i-1} - eps|
  double max_psum = 0.0;       // max_t max_i |p_{2i-1} + p_{2i}|
  bool integrated = false;
  std::string error;           // integrator failure, if any
};

struct StickinessReport {
  std::vector<StickinessEntry> entries;
  double slope_psum_rate = 0.0;  // log-log slope of t3_psum_rate vs eps
  double slope_sep_dev = 0.0;    // log-log slope of max_sep_dev vs eps
  double slope_max_psum = 0.0;   // log-log slope of max_psum vs eps
};

// Integrates the full t3 flow from embed(r, eps) for every eps in eps_list
// (entries run concurrently on up to `jobs` threads; jobs <= 0 means all
// cores) and fits the scaling of the stickiness metrics against eps.
StickinessReport stickiness_report(const Lattice& lat, const ReducedState& r,
                                   std::span<const double> eps_list, double t_end,
                                   double tol = 1e-10, int jobs = 0);

}  // namespace cmpairs
