#pragma once

#include <span>
#include <vector>

#include "cmpairs/bkp_reduced.hpp"
#include "cmpairs/linalg.hpp"

namespace cmpairs {

// Calogero-Moser Lax matrix with spectral parameter lambda:
//   L_jk = p_j delta_jk + (1 - delta_jk) Phi(x_j - x_k, lambda).
ComplexMatrix lax_cm(const Lattice& lat, const CMState& s, Complex lambda);

// Restriction of the Lax matrix to the stuck-pair manifold, assembled as a
// 2n x 2n block matrix in eps (corrections of order eps^2 omitted):
//   diagonal block i:      [ 1/eps + a_i eps     -1/eps + wp(lambda) eps/2 ]
//                          [ 1/eps - wp(l) eps/2  -1/eps - a_i eps         ]
//   off-diagonal block ij: [ Phi(x_ij)            Phi(x_ij) - eps Phi'(x_ij) ]
//                          [ Phi(x_ij) + eps Phi'  Phi(x_ij)                 ]
ComplexMatrix lax_eps(const Lattice& lat, const ReducedState& r, double eps, Complex lambda);

// n x n Lax matrix of the reduced pole dynamics:
//   L_jk = (-xdot_j + 6 sum_{l != j} wp(x_j - x_l) - 3(z^2 - wp(lambda))) delta_jk
//          - 6 (1 - delta_jk) Phi'(x_jk) - 6 z (1 - delta_jk) Phi(x_jk),
// with xdot_j supplied by reduced_rhs.
ComplexMatrix lax_bkp(const Lattice& lat, const ReducedState& r, Complex z, Complex lambda);

struct SpectralLimitResult {
  Complex value{};                // Richardson limit of det(L^eps - zI)
  double order_estimate = 0.0;    // empirical convergence order of the raw ladder
  std::vector<Complex> ladder;    // det(L^eps - zI) per ladder entry
};

// det(L^eps - zI) over a geometric eps ladder (>= 4 entries), extrapolated to
// eps -> 0 with an even-power Richardson table. Throws NoConvergence when the
// ladder does not stabilise (order estimate below 1), std::invalid_argument
// for a non-geometric or too-short ladder.
SpectralLimitResult spectral_limit(const Lattice& lat, const ReducedState& r, Complex z,
                                   Complex lambda, std::span<const double> eps_ladder);

// Grid of determinant samples; det_values[iz][il] for (z_grid[iz], lambda_grid[il]).
struct SpectralScan {
  std::vector<Complex> z_grid;
  std::vector<Complex> lambda_grid;
  std::vector<std::vector<Complex>> det_values;
  std::vector<double> eps_ladder;  // empty for the n x n pole-dynamics matrix
  bool extrapolated = false;
};

// Extrapolated det(L^eps - zI) over a (z, lambda) grid; points fan out to a
// worker pool.
SpectralScan scan_spectral_limit(const Lattice& lat, const ReducedState& r,
                                 std::span<const Complex> z_grid,
                                 std::span<const Complex> lambda_grid,
                                 std::span<const double> eps_ladder, int jobs = 0);

// det of the n x n pole-dynamics Lax matrix over the same grid.
SpectralScan scan_bkp_det(const Lattice& lat, const ReducedState& r,
                          std::span<const Complex> z_grid, std::span<const Complex> lambda_grid,
                          int jobs = 0);

// Comparison of the z-zero loci of the extrapolated determinant and of the
// pole-dynamics determinant at fixed lambda. Both determinants are monic-up-
// to-scale polynomials of degree 2n in z; the coefficients are recovered
// exactly from 2n+1 samples on a circle and the roots compared under the
// best pairing, both directly and after z -> -z.
struct ZeroLocusReport {
  Complex lambda{};
  std::vector<Complex> roots_limit;     // zeros of R(z, lambda)
  std::vector<Complex> roots_bkp;       // zeros of det L(z, lambda)
  double max_dist_direct = 0.0;         // best pairing of the root sets
  double max_dist_negated = 0.0;        // after negating the pole-dynamics roots
};

ZeroLocusReport zero_locus_experiment(const Lattice& lat, const ReducedState& r, Complex lambda,
                                      std::span<const double> eps_ladder);

}  // namespace cmpairs
