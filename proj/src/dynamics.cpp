#include "cmpairs/dynamics.hpp"

#include <limits>
#include <stdexcept>

namespace cmpairs {

std::array<Complex, 3> hamiltonians(const Lattice& lat, const CMState& s) {
  const int N = s.n_particles();
  Complex h1{0.0, 0.0}, h2{0.0, 0.0}, h3{0.0, 0.0};
  for (int i = 0; i < N; ++i) {
    h1 -= s.p[i];
    h2 += s.p[i] * s.p[i];
    h3 -= s.p[i] * s.p[i] * s.p[i];
  }
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (j == i) continue;
      const Complex w = wp(lat, s.x[i] - s.x[j]);
      h2 -= w;
      h3 += 3.0 * s.p[i] * w;
    }
  }
  return {h1, h2, h3};
}

Tangent flow_rhs(const Lattice& lat, int flow, const CMState& s) {
  const int N = s.n_particles();
  Tangent t;
  t.dx.assign(N, Complex{0.0, 0.0});
  t.dp.assign(N, Complex{0.0, 0.0});
  switch (flow) {
    case 1:
      for (int i = 0; i < N; ++i) t.dx[i] = Complex{-1.0, 0.0};
      return t;
    case 2:
      for (int i = 0; i < N; ++i) {
        t.dx[i] = 2.0 * s.p[i];
        Complex f{0.0, 0.0};
        for (int j = 0; j < N; ++j) {
          if (j == i) continue;
          f += wp(lat, s.x[i] - s.x[j], 1);
        }
        t.dp[i] = 2.0 * f;
      }
      return t;
    case 3:
      for (int i = 0; i < N; ++i) {
        Complex sw{0.0, 0.0}, swp{0.0, 0.0};
        for (int j = 0; j < N; ++j) {
          if (j == i) continue;
          const Complex d = s.x[i] - s.x[j];
          sw += wp(lat, d);
          swp += (s.p[i] + s.p[j]) * wp(lat, d, 1);
        }
        t.dx[i] = -3.0 * s.p[i] * s.p[i] + 3.0 * sw;
        t.dp[i] = -3.0 * swp;
      }
      return t;
    default:
      throw std::invalid_argument("flow_rhs: flow index must be 1, 2 or 3");
  }
}

std::vector<Complex> pack(const CMState& s) {
  std::vector<Complex> y;
  y.reserve(2 * s.x.size());
  y.insert(y.end(), s.x.begin(), s.x.end());
  y.insert(y.end(), s.p.begin(), s.p.end());
  return y;
}

CMState unpack_cm(std::span<const Complex> y) {
  const size_t N = y.size() / 2;
  CMState s;
  s.x.assign(y.begin(), y.begin() + N);
  s.p.assign(y.begin() + N, y.end());
  return s;
}

RhsFn cm_flow_rhs(const Lattice& lat, int flow) {
  return [&lat, flow](double, std::span<const Complex> y, std::span<Complex> dy) {
    const CMState s = unpack_cm(y);
    const Tangent t = flow_rhs(lat, flow, s);
    const size_t N = s.x.size();
    for (size_t i = 0; i < N; ++i) {
      dy[i] = t.dx[i];
      dy[N + i] = t.dp[i];
    }
  };
}

Trajectory integrate_cm(const Lattice& lat, int flow, const CMState& s0, double t_end, double tol,
                        const IntegrateOptions& opts) {
  return integrate(cm_flow_rhs(lat, flow), pack(s0), t_end, tol, opts);
}

double min_pair_distance(const Lattice& lat, const CMState& s) {
  double d = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < s.x.size(); ++i) {
    for (size_t j = i + 1; j < s.x.size(); ++j) {
      d = std::min(d, lat.reduce(s.x[i] - s.x[j]).dist_to_lattice);
    }
  }
  return d;
}

}  // namespace cmpairs
