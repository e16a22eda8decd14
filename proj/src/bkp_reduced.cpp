#include "cmpairs/bkp_reduced.hpp"

namespace cmpairs {

ReducedTangent reduced_rhs(const Lattice& lat, const ReducedState& r) {
  const int n = r.n_pairs();
  ReducedTangent t;
  t.dx.assign(n, Complex{0.0, 0.0});
  t.dalpha.assign(n, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    Complex s0{0.0, 0.0}, s1{0.0, 0.0}, s3{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Complex d = r.x[i] - r.x[j];
      s0 += wp(lat, d);
      s1 += wp(lat, d, 1);
      s3 += wp(lat, d, 3);
    }
    t.dx[i] = -6.0 * r.alpha[i] + 6.0 * s0;
    t.dalpha[i] = -12.0 * r.alpha[i] * s1 + s3;
  }
  return t;
}

std::vector<Complex> reduced_accel(const Lattice& lat, const ReducedState& r) {
  const int n = r.n_pairs();
  const ReducedTangent t = reduced_rhs(lat, r);
  std::vector<Complex> acc(n, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    Complex s{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      s += wp(lat, r.x[i] - r.x[j], 1) * (t.dx[i] - t.dx[j]);
    }
    acc[i] = -6.0 * t.dalpha[i] + 6.0 * s;
  }
  return acc;
}

namespace {

void check_lengths(std::span<const Complex> x, std::span<const Complex> xdot,
                   std::span<const Complex> xddot) {
  if (x.size() != xdot.size() || x.size() != xddot.size()) {
    throw LengthMismatch("second_order_residual: x, xdot, xddot must have equal length");
  }
}

}  // namespace

std::vector<Complex> second_order_residual(const Lattice& lat, std::span<const Complex> x,
                                           std::span<const Complex> xdot,
                                           std::span<const Complex> xddot) {
  check_lengths(x, xdot, xddot);
  const int n = int(x.size());
  std::vector<Complex> res(n, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    Complex r = xddot[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      r += 6.0 * (xdot[i] + xdot[j]) * wp(lat, x[i] - x[j], 1);
    }
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Complex wj = wp(lat, x[i] - x[j]);
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        r -= 72.0 * wj * wp(lat, x[i] - x[k], 1);
      }
    }
    res[i] = r;
  }
  return res;
}

std::vector<Complex> second_order_residual_wp3(const Lattice& lat, std::span<const Complex> x,
                                               std::span<const Complex> xdot,
                                               std::span<const Complex> xddot) {
  check_lengths(x, xdot, xddot);
  const int n = int(x.size());
  std::vector<Complex> res(n, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    Complex r = xddot[i];
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Complex d = x[i] - x[j];
      r += 6.0 * (xdot[i] + xdot[j]) * wp(lat, d, 1) + 6.0 * wp(lat, d, 3);
    }
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Complex wj = wp(lat, x[i] - x[j]);
      for (int k = 0; k < n; ++k) {
        if (k == i) continue;
        r -= 72.0 * wj * wp(lat, x[i] - x[k], 1);
      }
    }
    res[i] = r;
  }
  return res;
}

std::vector<Complex> pack(const ReducedState& r) {
  std::vector<Complex> y;
  y.reserve(2 * r.x.size());
  y.insert(y.end(), r.x.begin(), r.x.end());
  y.insert(y.end(), r.alpha.begin(), r.alpha.end());
  return y;
}

ReducedState unpack_reduced(std::span<const Complex> y) {
  const size_t n = y.size() / 2;
  ReducedState r;
  r.x.assign(y.begin(), y.begin() + n);
  r.alpha.assign(y.begin() + n, y.end());
  return r;
}

RhsFn reduced_flow_rhs(const Lattice& lat) {
  return [&lat](double, std::span<const Complex> y, std::span<Complex> dy) {
    const ReducedState r = unpack_reduced(y);
    const ReducedTangent t = reduced_rhs(lat, r);
    const size_t n = r.x.size();
    for (size_t i = 0; i < n; ++i) {
      dy[i] = t.dx[i];
      dy[n + i] = t.dalpha[i];
    }
  };
}

Trajectory integrate_reduced(const Lattice& lat, const ReducedState& r0, double t_end, double tol,
                             const IntegrateOptions& opts) {
  return integrate(reduced_flow_rhs(lat), pack(r0), t_end, tol, opts);
}

}  // namespace cmpairs
