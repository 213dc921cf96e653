#include "eemit/integrator.hpp"

#include <algorithm>
#include <cmath>

namespace eemit {

std::string_view to_string(Observable obs) { return obs == Observable::X ? "x" : "y"; }

std::optional<Observable> parse_observable(std::string_view name) {
  if (name == "x") return Observable::X;
  if (name == "y") return Observable::Y;
  return std::nullopt;
}

std::optional<std::string> validate(const SimPlan& plan) {
  if (!(plan.dt > 0.0) || !std::isfinite(plan.dt)) return "dt must be positive and finite";
  if (!std::isfinite(plan.t0)) return "t0 must be finite";
  if (!is_finite(plan.ic)) return "initial condition must be finite";
  if (plan.transient_steps < 0) return "transient_steps must be >= 0";
  if (plan.record_steps < 1) return "record_steps must be >= 1";
  if (plan.sample_every < 1) return "sample_every must be >= 1";
  if (plan.strobe_period && !(*plan.strobe_period > 0.0 && std::isfinite(*plan.strobe_period))) {
    return "strobe period must be positive and finite";
  }
  return std::nullopt;
}

std::int64_t default_transient_steps(SystemKind kind) { return is_lienard(kind) ? 100'000 : 1'000'000; }

Observable default_observable(SystemKind kind) { return is_lienard(kind) ? Observable::Y : Observable::X; }

State default_initial_condition(SystemKind kind) {
  return is_lienard(kind) ? State{0.1, 0.1} : State{0.0, 0.0};
}

std::optional<State> rk4_step(const SystemSpec& spec, const State& s, double t, double dt) {
  const State next = rk4_advance(spec, s, t, dt);
  if (!is_finite(next)) return std::nullopt;
  return next;
}

SampleSchedule::SampleSchedule(const SimPlan& plan)
    : plan_(plan), last_step_(plan.transient_steps + plan.record_steps - 1) {
  if (plan_.strobe_period) {
    const double ratio = *plan_.strobe_period / plan_.dt;
    strobe_index_ = std::max<std::int64_t>(
        0, static_cast<std::int64_t>(static_cast<double>(plan_.transient_steps) / ratio) - 1);
    next_strobe_step_ = std::llround(static_cast<double>(strobe_index_) * ratio);
    while (next_strobe_step_ < plan_.transient_steps) {
      ++strobe_index_;
      next_strobe_step_ = std::llround(static_cast<double>(strobe_index_) * ratio);
    }
  }
}

bool SampleSchedule::take(std::int64_t k) {
  if (k < plan_.transient_steps || k > last_step_) return false;
  if (!plan_.strobe_period) return (k - plan_.transient_steps) % plan_.sample_every == 0;
  if (k != next_strobe_step_) return false;
  const double ratio = *plan_.strobe_period / plan_.dt;
  // Periods shorter than dt map several multiples onto one step; record it once.
  while (next_strobe_step_ <= k) {
    ++strobe_index_;
    next_strobe_step_ = std::llround(static_cast<double>(strobe_index_) * ratio);
  }
  return true;
}

Outcome<Trajectory> simulate(const SystemSpec& spec, const SimPlan& plan) {
  if (auto err = validate(plan)) throw std::invalid_argument(*err);
  SampleSchedule schedule(plan);
  Trajectory traj;
  if (!plan.strobe_period) {
    const auto n = static_cast<std::size_t>((plan.record_steps + plan.sample_every - 1) / plan.sample_every);
    traj.times.reserve(n);
    traj.values.reserve(n);
    traj.companion.reserve(n);
  }
  auto blowup = integrate(spec, plan.ic, plan.t0, plan.dt, schedule.last_step(),
                          [&](std::int64_t k, double t, const State& s) {
                            if (schedule.take(k)) {
                              traj.times.push_back(t);
                              traj.values.push_back(observe(plan.observable, s));
                              traj.companion.push_back(companion_of(plan.observable, s));
                            }
                            return true;
                          });
  if (blowup) return *blowup;
  return traj;
}

}  // namespace eemit
