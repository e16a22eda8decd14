#include "cmpairs/lax_spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cmpairs/parallel.hpp"

namespace cmpairs {

ComplexMatrix lax_cm(const Lattice& lat, const CMState& s, Complex lambda) {
  const int N = s.n_particles();
  ComplexMatrix L(N, N);
  for (int j = 0; j < N; ++j) {
    L(j, j) = s.p[j];
    for (int k = 0; k < N; ++k) {
      if (k == j) continue;
      L(j, k) = phi(lat, s.x[j] - s.x[k], lambda);
    }
  }
  return L;
}

ComplexMatrix lax_eps(const Lattice& lat, const ReducedState& r, double eps, Complex lambda) {
  const int n = r.n_pairs();
  const Complex wl = wp(lat, lambda);
  ComplexMatrix L(2 * n, 2 * n);
  for (int i = 0; i < n; ++i) {
    L(2 * i, 2 * i) = 1.0 / eps + r.alpha[i] * eps;
    L(2 * i, 2 * i + 1) = -1.0 / eps + 0.5 * wl * eps;
    L(2 * i + 1, 2 * i) = 1.0 / eps - 0.5 * wl * eps;
    L(2 * i + 1, 2 * i + 1) = -1.0 / eps - r.alpha[i] * eps;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const Complex d = r.x[i] - r.x[j];
      const Complex f = phi(lat, d, lambda);
      const Complex f1 = phi(lat, d, lambda, 1);
      L(2 * i, 2 * j) = f;
      L(2 * i, 2 * j + 1) = f - eps * f1;
      L(2 * i + 1, 2 * j) = f + eps * f1;
      L(2 * i + 1, 2 * j + 1) = f;
    }
  }
  return L;
}

ComplexMatrix lax_bkp(const Lattice& lat, const ReducedState& r, Complex z, Complex lambda) {
  const int n = r.n_pairs();
  const ReducedTangent t = reduced_rhs(lat, r);
  const Complex wl = wp(lat, lambda);
  ComplexMatrix L(n, n);
  for (int j = 0; j < n; ++j) {
    Complex s0{0.0, 0.0};
    for (int l = 0; l < n; ++l) {
      if (l == j) continue;
      s0 += wp(lat, r.x[j] - r.x[l]);
    }
    L(j, j) = -t.dx[j] + 6.0 * s0 - 3.0 * (z * z - wl);
    for (int k = 0; k < n; ++k) {
      if (k == j) continue;
      const Complex d = r.x[j] - r.x[k];
      L(j, k) = -6.0 * phi(lat, d, lambda, 1) - 6.0 * z * phi(lat, d, lambda);
    }
  }
  return L;
}

namespace {

void check_ladder(std::span<const double> eps_ladder) {
  if (eps_ladder.size() < 4) {
    throw std::invalid_argument("spectral_limit: eps ladder needs at least 4 entries");
  }
  const double ratio = eps_ladder[0] / eps_ladder[1];
  if (!(ratio > 1.0)) throw std::invalid_argument("spectral_limit: eps ladder must decrease");
  for (size_t k = 1; k + 1 < eps_ladder.size(); ++k) {
    const double rk = eps_ladder[k] / eps_ladder[k + 1];
    if (std::abs(rk - ratio) > 1e-9 * ratio) {
      throw std::invalid_argument("spectral_limit: eps ladder must be geometric");
    }
  }
}

}  // namespace

SpectralLimitResult spectral_limit(const Lattice& lat, const ReducedState& r, Complex z,
                                   Complex lambda, std::span<const double> eps_ladder) {
  check_ladder(eps_ladder);
  const double ratio = eps_ladder[0] / eps_ladder[1];

  SpectralLimitResult res;
  res.ladder.reserve(eps_ladder.size());
  for (const double eps : eps_ladder) {
    res.ladder.push_back(det(shifted(lax_eps(lat, r, eps, lambda), z)));
  }

  // Empirical order from successive differences: |v_k - v_{k+1}| ~ eps_k^p.
  double scale = 0.0;
  for (const Complex& v : res.ladder) scale = std::max(scale, std::abs(v));
  std::vector<double> orders;
  bool converged_flat = false;
  for (size_t k = 0; k + 2 < res.ladder.size(); ++k) {
    const double d0 = std::abs(res.ladder[k] - res.ladder[k + 1]);
    const double d1 = std::abs(res.ladder[k + 1] - res.ladder[k + 2]);
    if (d1 < 1e-14 * std::max(scale, 1.0)) {
      converged_flat = true;  // differences at roundoff: already converged
      continue;
    }
    orders.push_back(std::log(d0 / d1) / std::log(ratio));
  }
  if (!orders.empty()) {
    std::nth_element(orders.begin(), orders.begin() + orders.size() / 2, orders.end());
    res.order_estimate = orders[orders.size() / 2];
  } else {
    res.order_estimate = converged_flat ? 8.0 : 0.0;
  }
  if (!converged_flat && res.order_estimate < 1.0) {
    throw NoConvergence("spectral_limit: ladder order estimate below 1");
  }

  // Even-power Richardson table; with ratio rho the level-j step removes the
  // eps^(2j) contribution.
  std::vector<Complex> row(res.ladder.begin(), res.ladder.end());
  const double rho2 = ratio * ratio;
  double factor = rho2;
  while (row.size() > 1) {
    std::vector<Complex> next(row.size() - 1);
    for (size_t k = 0; k + 1 < row.size(); ++k) {
      next[k] = (factor * row[k + 1] - row[k]) / (factor - 1.0);
    }
    row.swap(next);
    factor *= rho2;
  }
  res.value = row[0];
  return res;
}

SpectralScan scan_spectral_limit(const Lattice& lat, const ReducedState& r,
                                 std::span<const Complex> z_grid,
                                 std::span<const Complex> lambda_grid,
                                 std::span<const double> eps_ladder, int jobs) {
  SpectralScan scan;
  scan.z_grid.assign(z_grid.begin(), z_grid.end());
  scan.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  scan.eps_ladder.assign(eps_ladder.begin(), eps_ladder.end());
  scan.extrapolated = true;
  const int nz = int(z_grid.size()), nl = int(lambda_grid.size());
  scan.det_values.assign(nz, std::vector<Complex>(nl));
  parallel_for(nz * nl, jobs, [&](int idx) {
    const int iz = idx / nl, il = idx % nl;
    scan.det_values[iz][il] =
        spectral_limit(lat, r, z_grid[iz], lambda_grid[il], eps_ladder).value;
  });
  return scan;
}

SpectralScan scan_bkp_det(const Lattice& lat, const ReducedState& r,
                          std::span<const Complex> z_grid, std::span<const Complex> lambda_grid,
                          int jobs) {
  SpectralScan scan;
  scan.z_grid.assign(z_grid.begin(), z_grid.end());
  scan.lambda_grid.assign(lambda_grid.begin(), lambda_grid.end());
  scan.extrapolated = false;
  const int nz = int(z_grid.size()), nl = int(lambda_grid.size());
  scan.det_values.assign(nz, std::vector<Complex>(nl));
  parallel_for(nz * nl, jobs, [&](int idx) {
    const int iz = idx / nl, il = idx % nl;
    scan.det_values[iz][il] = det(lax_bkp(lat, r, z_grid[iz], lambda_grid[il]));
  });
  return scan;
}

ZeroLocusReport zero_locus_experiment(const Lattice& lat, const ReducedState& r, Complex lambda,
                                      std::span<const double> eps_ladder) {
  const int n = r.n_pairs();
  const int deg = 2 * n;
  const int samples = deg + 1;
  const double radius = 2.0;

  ZeroLocusReport rep;
  rep.lambda = lambda;

  // Sample both determinants on a circle; recover polynomial coefficients by
  // inverse DFT (exact for degree <= deg), then take companion-matrix roots.
  std::vector<Complex> zs(samples), v_limit(samples), v_bkp(samples);
  for (int s = 0; s < samples; ++s) {
    const double ang = 2.0 * std::numbers::pi * s / samples;
    zs[s] = radius * Complex{std::cos(ang), std::sin(ang)};
    v_limit[s] = spectral_limit(lat, r, zs[s], lambda, eps_ladder).value;
    v_bkp[s] = det(lax_bkp(lat, r, zs[s], lambda));
  }
  auto fit_roots = [&](const std::vector<Complex>& vals) {
    std::vector<Complex> coef(samples);
    for (int k = 0; k < samples; ++k) {
      Complex c{0.0, 0.0};
      for (int s = 0; s < samples; ++s) {
        const double ang = -2.0 * std::numbers::pi * s * k / samples;
        c += vals[s] * Complex{std::cos(ang), std::sin(ang)};
      }
      coef[k] = c / (double(samples) * std::pow(radius, k));
    }
    return poly_roots(coef);
  };
  rep.roots_limit = fit_roots(v_limit);
  rep.roots_bkp = fit_roots(v_bkp);

  if (rep.roots_limit.size() == rep.roots_bkp.size()) {
    rep.max_dist_direct = match_multisets(rep.roots_limit, rep.roots_bkp);
    std::vector<Complex> negated(rep.roots_bkp);
    for (Complex& z : negated) z = -z;
    rep.max_dist_negated = match_multisets(rep.roots_limit, negated);
  }
  return rep;
}

}  // namespace cmpairs
