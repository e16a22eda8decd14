#include "cmpairs/pair_manifold.hpp"

#include <algorithm>
#include <cmath>

#include "cmpairs/fit.hpp"
#include "cmpairs/parallel.hpp"

namespace cmpairs {

PairEmbedding beta_coeffs(const Lattice& lat, const ReducedState& r) {
  const int n = r.n_pairs();
  PairEmbedding pe;
  pe.beta0.assign(n, Complex{0.0, 0.0});
  pe.beta1.assign(n, Complex{0.0, 0.0});
  pe.beta2.assign(n, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    Complex s1{0.0, 0.0}, s3{0.0, 0.0};
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Complex d = r.x[i] - r.x[j];
      s1 += wp(lat, d, 1);
      s3 += wp(lat, d, 3);
    }
    pe.beta0[i] = -0.5 * s1;
    pe.beta2[i] = -r.alpha[i] * pe.beta0[i] - s3 / 12.0;
  }
  return pe;
}

CMState embed(const Lattice& lat, const ReducedState& r, double eps) {
  if (!(eps > 10.0 * lat.singular_radius())) {
    throw EpsilonTooSmall("embed: eps must exceed 10 * singular_radius");
  }
  const int n = r.n_pairs();
  PairEmbedding pe = beta_coeffs(lat, r);
  pe.epsilon = eps;
  CMState s;
  s.x.assign(2 * n, Complex{0.0, 0.0});
  s.p.assign(2 * n, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    const Complex beta = pe.beta0[i] + pe.beta2[i] * eps * eps;
    s.x[2 * i] = r.x[i];
    s.x[2 * i + 1] = r.x[i] + eps;
    s.p[2 * i] = 1.0 / eps + r.alpha[i] * eps + beta * eps * eps;
    s.p[2 * i + 1] = -1.0 / eps - r.alpha[i] * eps + beta * eps * eps;
  }
  // Cross-pair collision guard; within-pair separation is eps by construction.
  for (int i = 0; i < 2 * n; ++i) {
    for (int j = i + 1; j < 2 * n; ++j) {
      if (j == i + 1 && i % 2 == 0) continue;
      if (lat.reduce(s.x[i] - s.x[j]).dist_to_lattice <= lat.singular_radius()) {
        throw SingularArgument("embed: cross-pair collision in the embedded state");
      }
    }
  }
  return s;
}

ReducedState project(const CMState& s, double eps) {
  const int N = s.n_particles();
  if (N % 2 != 0) throw OddParticleCount("project: particle count must be even");
  ReducedState r;
  const int n = N / 2;
  r.x.assign(n, Complex{0.0, 0.0});
  r.alpha.assign(n, Complex{0.0, 0.0});
  for (int i = 0; i < n; ++i) {
    r.x[i] = s.x[2 * i];
    r.alpha[i] = (0.5 * (s.p[2 * i] - s.p[2 * i + 1]) - 1.0 / eps) / eps;
  }
  return r;
}

namespace {

double max_pair_metric(const CMState& s, double eps, bool separation) {
  const int n = s.n_particles() / 2;
  double m = 0.0;
  for (int i = 0; i < n; ++i) {
    if (separation) {
      m = std::max(m, std::abs(s.x[2 * i + 1] - s.x[2 * i] - eps));
    } else {
      m = std::max(m, std::abs(s.p[2 * i] + s.p[2 * i + 1]));
    }
  }
  return m;
}

}  // namespace

StickinessReport stickiness_report(const Lattice& lat, const ReducedState& r,
                                   std::span<const double> eps_list, double t_end, double tol,
                                   int jobs) {
  StickinessReport rep;
  rep.entries.resize(eps_list.size());

  parallel_for(int(eps_list.size()), jobs, [&](int k) {
    StickinessEntry& e = rep.entries[k];
    e.eps = eps_list[k];
    const CMState s0 = embed(lat, r, e.eps);
    const int n = r.n_pairs();

    const Tangent t3 = flow_rhs(lat, 3, s0);
    const Tangent t2 = flow_rhs(lat, 2, s0);
    for (int i = 0; i < n; ++i) {
      e.t3_psum_rate = std::max(e.t3_psum_rate, std::abs(t3.dp[2 * i] + t3.dp[2 * i + 1]));
      e.t3_sep_rate = std::max(e.t3_sep_rate, std::abs(t3.dx[2 * i + 1] - t3.dx[2 * i]));
      e.t2_sep_rate = std::max(e.t2_sep_rate, std::abs(t2.dx[2 * i + 1] - t2.dx[2 * i]));
    }

    try {
      const Trajectory traj = integrate_cm(lat, 3, s0, t_end, tol);
      for (const auto& y : traj.states) {
        const CMState st = unpack_cm(y);
        e.max_sep_dev = std::max(e.max_sep_dev, max_pair_metric(st, e.eps, true));
        e.max_psum = std::max(e.max_psum, max_pair_metric(st, e.eps, false));
      }
      e.integrated = true;
    } catch (const std::exception& ex) {
      e.error = ex.what();
    }
  });

  std::vector<double> eps(eps_list.begin(), eps_list.end());
  std::vector<double> rate, sep, psum;
  std::vector<double> eps_ok;
  for (const auto& e : rep.entries) rate.push_back(e.t3_psum_rate);
  rep.slope_psum_rate = loglog_slope(eps, rate);
  for (const auto& e : rep.entries) {
    if (!e.integrated) continue;
    eps_ok.push_back(e.eps);
    sep.push_back(e.max_sep_dev);
    psum.push_back(e.max_psum);
  }
  if (eps_ok.size() >= 2) {
    rep.slope_sep_dev = loglog_slope(eps_ok, sep);
    rep.slope_max_psum = loglog_slope(eps_ok, psum);
  }
  return rep;
}

}  // namespace cmpairs
