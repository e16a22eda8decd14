#pragma once

#include <array>
#include <span>
#include <vector>

#include "cmpairs/elliptic.hpp"
#include "cmpairs/integrator.hpp"

namespace cmpairs {

// Full Calogero-Moser phase point: N complex coordinates and N complex momenta.
struct CMState {
  std::vector<Complex> x;
  std::vector<Complex> p;
  int n_particles() const { return int(x.size()); }
};

struct Tangent {
  std::vector<Complex> dx;
  std::vector<Complex> dp;
};

// (H1, H2, H3) = (-sum p_i,
//                 sum p_i^2 - sum_{i != j} wp(x_i - x_j),
//                 -sum p_i^3 + 3 sum_{i != j} p_i wp(x_i - x_j)).
// The interaction sums run over ordered pairs. Near-collision throws
// SingularArgument (propagated from the kernel).
std::array<Complex, 3> hamiltonians(const Lattice& lat, const CMState& s);

// Vector field of the t_a flow, a in {1, 2, 3}:
//   a=1: dx_i = -1,                                  dp_i = 0
//   a=2: dx_i = 2 p_i,                               dp_i = 2 sum_{j != i} wp'(x_i - x_j)
//   a=3: dx_i = -3 p_i^2 + 3 sum_{j != i} wp(x_ij),  dp_i = -3 sum_{j != i} (p_i + p_j) wp'(x_ij)
Tangent flow_rhs(const Lattice& lat, int flow, const CMState& s);

// Flat packing (x..., p...) used for integration.
std::vector<Complex> pack(const CMState& s);
CMState unpack_cm(std::span<const Complex> y);

// Integrator adapter for the t_a flow.
RhsFn cm_flow_rhs(const Lattice& lat, int flow);

Trajectory integrate_cm(const Lattice& lat, int flow, const CMState& s0, double t_end, double tol,
                        const IntegrateOptions& opts = {});

// Smallest pairwise distance-to-lattice among particle separations.
double min_pair_distance(const Lattice& lat, const CMState& s);

}  // namespace cmpairs
