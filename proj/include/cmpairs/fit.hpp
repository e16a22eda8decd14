#pragma once

#include <cmath>
#include <span>

namespace cmpairs {

// Least-squares slope of y against x.
inline double linear_slope(std::span<const double> x, std::span<const double> y) {
  const size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < n; ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  const double d = double(n) * sxx - sx * sx;
  return (double(n) * sxy - sx * sy) / d;
}

// Slope of log(y) vs log(x); non-positive y entries are clamped to avoid NaN.
inline double loglog_slope(std::span<const double> x, std::span<const double> y) {
  std::vector<double> lx(x.size()), ly(y.size());
  for (size_t i = 0; i < x.size(); ++i) {
    lx[i] = std::log(x[i]);
    ly[i] = std::log(std::max(y[i], 1e-300));
  }
  return linear_slope(lx, ly);
}

}  // namespace cmpairs
