#pragma once

#include <complex>

namespace cmpairs {

using Complex = std::complex<double>;

inline constexpr Complex kImagUnit{0.0, 1.0};

inline double rel_err(Complex a, Complex b) {
  double scale = std::abs(b);
  return std::abs(a - b) / (scale > 1e-300 ? scale : 1e-300);
}

// Relative deviation with a floor on the reference scale, for drift measures
// where the conserved value may be small.
inline double rel_drift(Complex value, Complex reference, double scale_floor = 1.0) {
  double scale = std::max(std::abs(reference), scale_floor);
  return std::abs(value - reference) / scale;
}

}  // namespace cmpairs
