#include "cmpairs/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace cmpairs {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
// b - bhat (error weights).
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;
// Dense-output weights for the order-4 continuous extension.
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

using Vec = std::vector<Complex>;

void axpy(Vec& out, const Vec& y, double h, std::initializer_list<std::pair<double, const Vec*>> terms) {
  const size_t n = y.size();
  for (size_t i = 0; i < n; ++i) {
    Complex acc = y[i];
    for (const auto& [coef, k] : terms) acc += h * coef * (*k)[i];
    out[i] = acc;
  }
}

}  // namespace

Trajectory integrate(const RhsFn& rhs, std::vector<Complex> y0, double t_end, double tol,
                     const IntegrateOptions& opts) {
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be positive");
  if (!(tol >= 1e-14 && tol <= 1e-3)) {
    throw std::invalid_argument("integrate: tol must lie in [1e-14, 1e-3]");
  }
  for (size_t i = 0; i + 1 < opts.sample_times.size(); ++i) {
    if (!(opts.sample_times[i] < opts.sample_times[i + 1])) {
      throw std::invalid_argument("integrate: sample_times must be strictly increasing");
    }
  }
  if (!opts.sample_times.empty() &&
      (opts.sample_times.front() < 0.0 || opts.sample_times.back() > t_end)) {
    throw std::invalid_argument("integrate: sample_times must lie in [0, t_end]");
  }

  const size_t n = y0.size();
  Trajectory traj;
  const bool sampling = !opts.sample_times.empty();
  size_t next_sample = 0;

  Vec y = std::move(y0);
  Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);

  double t = 0.0;
  rhs(t, y, k1);

  if (sampling) {
    while (next_sample < opts.sample_times.size() && opts.sample_times[next_sample] <= 0.0) {
      traj.times.push_back(opts.sample_times[next_sample]);
      traj.states.push_back(y);
      ++next_sample;
    }
  } else {
    traj.times.push_back(0.0);
    traj.states.push_back(y);
  }

  // Initial step from the scale of y and f.
  double h;
  {
    double ny = 0.0, nf = 0.0;
    for (size_t i = 0; i < n; ++i) {
      ny = std::max(ny, std::abs(y[i]));
      nf = std::max(nf, std::abs(k1[i]));
    }
    h = 0.01 * (ny + 1.0) / (nf + 1e-6);
    h = std::clamp(h, 1e-8 * t_end, 0.1 * t_end);
  }

  const double h_min = 1e-12 * t_end;
  // Steps are accepted whenever the estimated local error is within tol, but
  // the controller aims for a fixed fraction of that budget so the error
  // accumulated over long runs (thousands of steps) stays well below the
  // per-step bound.
  constexpr double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
  constexpr double err_target = 0.18;
  double facold = 1e-4;
  bool rejected_last = false;

  while (t < t_end) {
    if (h < h_min) {
      throw StepSizeUnderflow("integrate: step size underflow at t = " + std::to_string(t));
    }
    const bool last = (t + h >= t_end);
    if (last) h = t_end - t;

    axpy(ytmp, y, h, {{a21, &k1}});
    rhs(t + c2 * h, ytmp, k2);
    axpy(ytmp, y, h, {{a31, &k1}, {a32, &k2}});
    rhs(t + c3 * h, ytmp, k3);
    axpy(ytmp, y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}});
    rhs(t + c4 * h, ytmp, k4);
    axpy(ytmp, y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}});
    rhs(t + c5 * h, ytmp, k5);
    axpy(ytmp, y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}});
    rhs(t + h, ytmp, k6);
    axpy(ynew, y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    rhs(t + h, ynew, k7);  // FSAL

    double err2 = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const Complex ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                              e7 * k7[i]);
      const double sc = tol + tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      const double r = std::abs(ei) / sc;
      err2 += r * r;
    }
    const double err = std::sqrt(err2 / double(n));

    const double fac11 = std::pow(std::max(err / err_target, 1e-30), expo1);
    if (err <= 1.0) {
      // accept
      traj.stats.accepted++;
      traj.stats.max_error_estimate = std::max(traj.stats.max_error_estimate, err * tol);

      if (sampling && next_sample < opts.sample_times.size()) {
        const double ts_end = t + h;
        while (next_sample < opts.sample_times.size() && opts.sample_times[next_sample] <= ts_end) {
          const double theta = (opts.sample_times[next_sample] - t) / h;
          Vec out(n);
          for (size_t i = 0; i < n; ++i) {
            const Complex ydiff = ynew[i] - y[i];
            const Complex bspl = h * k1[i] - ydiff;
            const Complex r4 = ydiff - h * k7[i] - bspl;
            const Complex r5 = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                    d6 * k6[i] + d7 * k7[i]);
            out[i] = y[i] + theta * (ydiff + (1.0 - theta) * (bspl + theta * (r4 + (1.0 - theta) * r5)));
          }
          traj.times.push_back(opts.sample_times[next_sample]);
          traj.states.push_back(std::move(out));
          ++next_sample;
        }
      }

      t += h;
      y.swap(ynew);
      k1.swap(k7);

      if (!sampling) {
        traj.times.push_back(t);
        traj.states.push_back(y);
      }

      double fac = fac11 / std::pow(facold, beta);
      fac = std::clamp(fac / safe, 0.1, 5.0);
      double hnew = h / fac;
      if (rejected_last) hnew = std::min(hnew, h);
      facold = std::max(err / err_target, 1e-4);
      rejected_last = false;
      h = hnew;
    } else {
      traj.stats.rejected++;
      h = h / std::min(5.0, fac11 / safe);
      rejected_last = true;
    }
  }
  return traj;
}

}  // namespace cmpairs
