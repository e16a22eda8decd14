#pragma once

#include <functional>
#include <span>
#include <vector>

#include "cmpairs/errors.hpp"
#include "cmpairs/types.hpp"

namespace cmpairs {

// Vector field callback: fills dy with f(t, y). dy has the same length as y.
using RhsFn = std::function<void(double t, std::span<const Complex> y, std::span<Complex> dy)>;

struct StepStats {
  long accepted = 0;
  long rejected = 0;
  // Largest estimated local error among accepted steps (in absolute units,
  // i.e. the weighted error norm times the tolerance).
  double max_error_estimate = 0.0;
};

// Time-stamped states of a run. If sample times were requested the states sit
// exactly at those times (dense output); otherwise every accepted step is
// recorded, starting with the initial state.
struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<Complex>> states;
  StepStats stats;
};

struct IntegrateOptions {
  // Strictly increasing times in [0, t_end] at which to sample the solution
  // via the 4th-order continuous extension. Empty: record accepted steps.
  std::vector<double> sample_times;
};

// Adaptive embedded Dormand-Prince 5(4) on a complex state over real time
// [0, t_end], PI step-size control, local error per step bounded by tol
// (mixed absolute/relative weights). Throws StepSizeUnderflow when the step
// falls below 1e-12 * t_end, std::invalid_argument for tol outside
// [1e-14, 1e-3] or t_end <= 0. Errors thrown by the callback propagate.
Trajectory integrate(const RhsFn& rhs, std::vector<Complex> y0, double t_end, double tol,
                     const IntegrateOptions& opts = {});

}  // namespace cmpairs
