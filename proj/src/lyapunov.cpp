#include "eemit/lyapunov.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace eemit {

namespace {

struct Tangent {
  double x;
  double y;
};

Tangent apply(const Jacobian& j, const Tangent& v) {
  return {j[0][0] * v.x + j[0][1] * v.y, j[1][0] * v.x + j[1][1] * v.y};
}

// One coupled RK4 step of the state and its tangent vector.
void coupled_step(const SystemSpec& spec, State& s, Tangent& v, double t, double dt) {
  const double half = 0.5 * dt;
  const State k1 = vector_field(spec, s, t);
  const Tangent l1 = apply(jacobian(spec, s, t), v);

  const State p2{s.x + half * k1.x, s.y + half * k1.y};
  const Tangent v2{v.x + half * l1.x, v.y + half * l1.y};
  const State k2 = vector_field(spec, p2, t + half);
  const Tangent l2 = apply(jacobian(spec, p2, t + half), v2);

  const State p3{s.x + half * k2.x, s.y + half * k2.y};
  const Tangent v3{v.x + half * l2.x, v.y + half * l2.y};
  const State k3 = vector_field(spec, p3, t + half);
  const Tangent l3 = apply(jacobian(spec, p3, t + half), v3);

  const State p4{s.x + dt * k3.x, s.y + dt * k3.y};
  const Tangent v4{v.x + dt * l3.x, v.y + dt * l3.y};
  const State k4 = vector_field(spec, p4, t + dt);
  const Tangent l4 = apply(jacobian(spec, p4, t + dt), v4);

  const double w = dt / 6.0;
  s = {s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x), s.y + w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
  v = {v.x + w * (l1.x + 2.0 * l2.x + 2.0 * l3.x + l4.x), v.y + w * (l1.y + 2.0 * l2.y + 2.0 * l3.y + l4.y)};
}

}  // namespace

std::optional<std::string> validate(const MleSettings& settings) {
  if (!(settings.dt > 0.0) || !std::isfinite(settings.dt)) return "dt must be positive and finite";
  if (settings.transient_steps < 0) return "transient_steps must be >= 0";
  if (settings.renorm_every < 1) return "renorm_every must be >= 1";
  if (settings.total_steps < settings.renorm_every) return "total_steps must be >= renorm_every";
  const double norm = std::hypot(settings.seed_tangent.x, settings.seed_tangent.y);
  if (!(norm > 0.0) || !std::isfinite(norm)) return "seed tangent must be finite and non-zero";
  return std::nullopt;
}

Outcome<double> mle(const SystemSpec& spec, const State& ic, const MleSettings& settings, double t0) {
  if (auto err = validate(settings)) throw std::invalid_argument(*err);
  const double dt = settings.dt;
  State s = ic;
  if (!is_finite(s)) return Divergence{t0};

  std::int64_t k = 0;
  for (; k < settings.transient_steps; ++k) {
    s = rk4_advance(spec, s, t0 + static_cast<double>(k) * dt, dt);
    if (!is_finite(s)) return Divergence{t0 + static_cast<double>(k + 1) * dt};
  }

  const double seed_norm = std::hypot(settings.seed_tangent.x, settings.seed_tangent.y);
  Tangent v{settings.seed_tangent.x / seed_norm, settings.seed_tangent.y / seed_norm};
  double log_growth = 0.0;
  std::int64_t since_renorm = 0;
  const std::int64_t end = settings.transient_steps + settings.total_steps;
  for (; k < end; ++k) {
    coupled_step(spec, s, v, t0 + static_cast<double>(k) * dt, dt);
    if (!is_finite(s)) return Divergence{t0 + static_cast<double>(k + 1) * dt};
    if (++since_renorm == settings.renorm_every || k + 1 == end) {
      const double norm = std::hypot(v.x, v.y);
      if (!std::isfinite(norm)) return Divergence{t0 + static_cast<double>(k + 1) * dt};
      // A tangent that collapsed to zero carries no more information.
      if (norm == 0.0) return -std::numeric_limits<double>::infinity();
      log_growth += std::log(norm);
      v = {v.x / norm, v.y / norm};
      since_renorm = 0;
    }
  }
  return log_growth / (static_cast<double>(settings.total_steps) * dt);
}

}  // namespace eemit
