#pragma once

#include <array>

#include "cmpairs/errors.hpp"
#include "cmpairs/types.hpp"

namespace cmpairs {

// Argument carrier for lattice reduction: x = reduced + 2m*omega1 + 2n*omega2
// with the reduced representative in (or on the boundary of) the fundamental
// cell. dist_to_lattice is the Euclidean distance from the reduced
// representative to its nearest lattice point, which equals the distance of x
// itself to the lattice.
struct EllipticPoint {
  Complex x{};
  Complex reduced{};
  long m = 0;
  long n = 0;
  double dist_to_lattice = 0.0;
};

// A period lattice 2*omega1*Z + 2*omega2*Z with Im(omega2/omega1) > 0,
// carrying everything the Weierstrass evaluators need: the nome, the
// quasi-period constants eta1 = zeta(omega1), eta2 = zeta(omega2), the
// invariants g2, g3 and the q-series truncation order.
//
// Evaluation strategy: theta-function q-series after reduction of the
// argument to the fundamental cell. |q| < 1 makes the series converge
// geometrically (super-geometrically after reduction), so a handful of terms
// reach full double precision on any reasonably shaped lattice. Raw lattice
// sums are kept in lattice_sum.hpp as an independent slow reference.
//
// Immutable after construction; all member functions are const and safe to
// call concurrently.
class Lattice {
 public:
  // omega1, omega2 are the half-periods. Throws std::invalid_argument unless
  // Im(omega2/omega1) > 0. Construction cross-checks the Legendre relation
  // eta1*omega2 - eta2*omega1 = i*pi/2 against an independently computed
  // eta2 and throws std::runtime_error if the kernel is inconsistent.
  Lattice(Complex omega1, Complex omega2);

  Complex omega1() const { return omega1_; }
  Complex omega2() const { return omega2_; }
  Complex tau() const { return tau_; }
  Complex nome_q() const { return q_; }
  Complex eta1() const { return eta1_; }
  Complex eta2() const { return eta2_; }
  Complex g2() const { return g2_; }
  Complex g3() const { return g3_; }
  int series_terms() const { return series_terms_; }

  // Arguments closer than this to a lattice point are refused (callers must
  // detect collisions explicitly rather than receive approximations).
  double singular_radius() const { return singular_radius_; }

  // Set when the adaptive q-series truncation hit the 64-term cap, i.e. the
  // lattice is thin enough that the 1e-16 term target was not reached.
  bool accuracy_warning() const { return accuracy_warning_; }

  EllipticPoint reduce(Complex x) const;

  // theta_1(u) and u-derivatives up to max_order (<= 5) in one series pass.
  std::array<Complex, 6> theta1(Complex u, int max_order) const;

  Complex theta1_prime0() const { return theta1_prime0_; }

 private:
  Complex omega1_, omega2_, tau_, q_;
  Complex i_pi_tau_;
  Complex eta1_, eta2_, g2_, g3_;
  Complex theta1_prime0_;
  double inv_cell_[2][2] = {{0, 0}, {0, 0}};  // (Re x, Im x) -> cell coords (a, b)
  double singular_radius_ = 0.0;
  int series_terms_ = 0;
  bool accuracy_warning_ = false;
};

// Weierstrass p-function and derivatives: order 0..3 gives wp, wp', wp'',
// wp'''. Throws SingularArgument within singular_radius of a lattice point,
// InvalidOrder outside 0..3.
Complex wp(const Lattice& lat, Complex x, int order = 0);

// Weierstrass zeta (odd, zeta' = -wp), quasi-periodic via eta1/eta2 shifts.
Complex zeta(const Lattice& lat, Complex x);

// Weierstrass sigma (entire, odd, sigma(x) = x + O(x^5)).
Complex sigma(const Lattice& lat, Complex x);

// Phi(x, lambda) = sigma(x + lambda) * exp(-zeta(lambda) x) /
// (sigma(lambda) sigma(x)) and its x-derivatives, order 0..2.
// x and lambda must be off the singular set; for orders 1 and 2 the point
// x + lambda must be off it as well (the log-derivative form used for the
// derivatives has a removable-singularity there that is not handled).
Complex phi(const Lattice& lat, Complex x, Complex lambda, int order = 0);

}  // namespace cmpairs
