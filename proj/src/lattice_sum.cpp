#include "cmpairs/lattice_sum.hpp"

namespace cmpairs::lattice_sum {

Complex wp(const Lattice& lat, Complex x, int order, int cutoff) {
  if (order < 0 || order > 3) throw InvalidOrder("lattice_sum::wp: order must be in 0..3");
  const Complex p1 = 2.0 * lat.omega1();
  const Complex p2 = 2.0 * lat.omega2();
  Complex s{0.0, 0.0};
  if (order == 0) {
    // wp(x) = 1/x^2 + sum'[(x-w)^-2 - w^-2]
    for (int m = -cutoff; m <= cutoff; ++m) {
      for (int n = -cutoff; n <= cutoff; ++n) {
        if (m == 0 && n == 0) continue;
        const Complex w = double(m) * p1 + double(n) * p2;
        const Complex d = x - w;
        s += 1.0 / (d * d) - 1.0 / (w * w);
      }
    }
    return s + 1.0 / (x * x);
  }
  // Derivatives are absolutely convergent sums over the full lattice:
  // wp'    = -2 sum (x-w)^-3
  // wp''   =  6 sum (x-w)^-4
  // wp'''  = -24 sum (x-w)^-5
  for (int m = -cutoff; m <= cutoff; ++m) {
    for (int n = -cutoff; n <= cutoff; ++n) {
      const Complex w = double(m) * p1 + double(n) * p2;
      const Complex d = x - w;
      const Complex d2 = d * d;
      switch (order) {
        case 1: s += 1.0 / (d2 * d); break;
        case 2: s += 1.0 / (d2 * d2); break;
        default: s += 1.0 / (d2 * d2 * d); break;
      }
    }
  }
  switch (order) {
    case 1: return -2.0 * s;
    case 2: return 6.0 * s;
    default: return -24.0 * s;
  }
}

Complex zeta(const Lattice& lat, Complex x, int cutoff) {
  const Complex p1 = 2.0 * lat.omega1();
  const Complex p2 = 2.0 * lat.omega2();
  Complex s{0.0, 0.0};
  for (int m = -cutoff; m <= cutoff; ++m) {
    for (int n = -cutoff; n <= cutoff; ++n) {
      if (m == 0 && n == 0) continue;
      const Complex w = double(m) * p1 + double(n) * p2;
      s += 1.0 / (x - w) + 1.0 / w + x / (w * w);
    }
  }
  return s + 1.0 / x;
}

}  // namespace cmpairs::lattice_sum
