#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "eemit/dynamics.hpp"
#include "eemit/integrator.hpp"

namespace eemit {

/// Exponents above this value are classified as chaotic.
inline constexpr double kChaosThreshold = 1e-3;

struct MleSettings {
  double dt = 0.01;
  std::int64_t transient_steps = 100'000;
  std::int64_t total_steps = 10'000'000;
  std::int64_t renorm_every = 100;
  State seed_tangent{1.0, 0.0};
};

std::optional<std::string> validate(const MleSettings& settings);

/// Maximal Lyapunov exponent (Benettin): the tangent vector is carried along
/// with the trajectory by RK4 on the 4-D system (state, J(state, t) * v),
/// renormalized every `renorm_every` steps. Returns the accumulated log-growth
/// divided by the elapsed time after the transient.
Outcome<double> mle(const SystemSpec& spec, const State& ic, const MleSettings& settings, double t0 = 0.0);

}  // namespace eemit
