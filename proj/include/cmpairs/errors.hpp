#pragma once

#include <stdexcept>
#include <string>

namespace cmpairs {

// Evaluation requested within the singular radius of a lattice point,
// or a particle configuration collided.
struct SingularArgument : std::domain_error {
  using std::domain_error::domain_error;
};

// Derivative order outside the supported range.
struct InvalidOrder : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Pair separation too small for a well-conditioned embedding.
struct EpsilonTooSmall : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Pair projection requires an even particle count.
struct OddParticleCount : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct LengthMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Adaptive step fell below 1e-12 * t_end; the designated near-collision /
// blow-up signal of the integrator.
struct StepSizeUnderflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Extrapolation ladder failed to stabilise.
struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scenario configuration failed to parse or validate.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace cmpairs
