#pragma once

#include "cmpairs/elliptic.hpp"

namespace cmpairs::lattice_sum {

// Slow reference evaluators by direct summation over the lattice, truncated
// at |m|, |n| <= cutoff. Entirely independent of the theta-series kernel;
// kept only to cross-check it. The symmetric square cutoff cancels the odd
// tail terms, leaving a truncation error of order cutoff^-2 scaled by |x|^4
// for wp (|x|^3 for zeta), so agreement is good near the origin and degrades
// towards the cell boundary. Higher derivatives converge absolutely and fast.
Complex wp(const Lattice& lat, Complex x, int order = 0, int cutoff = 300);
Complex zeta(const Lattice& lat, Complex x, int cutoff = 300);

}  // namespace cmpairs::lattice_sum
