#pragma once

#include <span>

#include "cmpairs/pair_manifold.hpp"

namespace cmpairs {

struct ReducedTangent {
  std::vector<Complex> dx;
  std::vector<Complex> dalpha;
};

// First-order flow on the stuck-pair manifold:
//   dx_i     = -6 alpha_i + 6 sum_{j != i} wp(x_i - x_j)
//   dalpha_i = -12 alpha_i sum_{j != i} wp'(x_i - x_j) + sum_{j != i} wp'''(x_i - x_j)
ReducedTangent reduced_rhs(const Lattice& lat, const ReducedState& r);

// Analytic second time derivative of the pair positions along the reduced
// flow (chain rule through reduced_rhs, no finite differences):
//   xddot_i = -6 dalpha_i + 6 sum_{j != i} wp'(x_i - x_j) (dx_i - dx_j)
std::vector<Complex> reduced_accel(const Lattice& lat, const ReducedState& r);

// Residual of the second-order pole equations in the product-sum form:
//   r_i = xddot_i + 6 sum_{j != i} (xdot_i + xdot_j) wp'(x_i - x_j)
//         - 72 sum_{j != i, k != i, j != k} wp(x_i - x_j) wp'(x_i - x_k)
// The triple-sum index condition is j != i, k != i, j != k.
std::vector<Complex> second_order_residual(const Lattice& lat, std::span<const Complex> x,
                                           std::span<const Complex> xdot,
                                           std::span<const Complex> xddot);

// Equivalent form with the diagonal of the double sum kept and compensated by
// the wp''' term (identical by wp''' = 12 wp wp'):
//   r_i = xddot_i + 6 sum (xdot_i + xdot_j) wp'(x_ij)
//         - 72 sum_{j != i} sum_{k != i} wp(x_ij) wp'(x_ik) + 6 sum_{j != i} wp'''(x_ij)
std::vector<Complex> second_order_residual_wp3(const Lattice& lat, std::span<const Complex> x,
                                               std::span<const Complex> xdot,
                                               std::span<const Complex> xddot);

// Flat packing (x..., alpha...) and integration of the reduced flow.
std::vector<Complex> pack(const ReducedState& r);
ReducedState unpack_reduced(std::span<const Complex> y);
RhsFn reduced_flow_rhs(const Lattice& lat);
Trajectory integrate_reduced(const Lattice& lat, const ReducedState& r0, double t_end, double tol,
                             const IntegrateOptions& opts = {});

}  // namespace cmpairs
