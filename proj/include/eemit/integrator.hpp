#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "eemit/dynamics.hpp"

namespace eemit {

enum class Observable { X, Y };

std::string_view to_string(Observable obs);
std::optional<Observable> parse_observable(std::string_view name);

inline double observe(Observable obs, const State& s) { return obs == Observable::X ? s.x : s.y; }
inline double companion_of(Observable obs, const State& s) { return obs == Observable::X ? s.y : s.x; }

/// The state stopped being finite at `time`.
struct Divergence {
  double time = 0.0;
};

/// Either a value or a Divergence. Divergence is an ordinary outcome of
/// integrating a bad parameter corner, so it is returned rather than thrown.
template <class T>
class Outcome {
 public:
  Outcome(T value) : data_(std::move(value)) {}  // NOLINT(google-explicit-constructor)
  Outcome(Divergence d) : data_(d) {}             // NOLINT(google-explicit-constructor)

  bool ok() const { return std::holds_alternative<T>(data_); }
  explicit operator bool() const { return ok(); }

  const T& value() const& { return std::get<T>(data_); }
  T& value() & { return std::get<T>(data_); }
  T&& value() && { return std::get<T>(std::move(data_)); }
  const T& operator*() const& { return value(); }
  const T* operator->() const { return &value(); }

  const Divergence& divergence() const { return std::get<Divergence>(data_); }

 private:
  std::variant<T, Divergence> data_;
};

struct SimPlan {
  State ic{};
  double dt = 0.01;
  double t0 = 0.0;
  std::int64_t transient_steps = 0;
  std::int64_t record_steps = 1;
  std::int64_t sample_every = 1;
  Observable observable = Observable::Y;
  /// When set, only states at t0 + m * period (nearest step) are recorded.
  std::optional<double> strobe_period;
};

std::optional<std::string> validate(const SimPlan& plan);

/// Default transient length: 1e5 steps for Lienard kinds, 1e6 for the others.
std::int64_t default_transient_steps(SystemKind kind);
/// Default observable: y for Lienard kinds, x for the others.
Observable default_observable(SystemKind kind);
/// Default initial condition: (0.1, 0.1) for Lienard kinds, the origin otherwise.
State default_initial_condition(SystemKind kind);

struct Trajectory {
  std::vector<double> times;
  std::vector<double> values;
  std::vector<double> companion;

  std::size_t size() const { return values.size(); }
};

inline bool is_finite(const State& s) { return std::isfinite(s.x) && std::isfinite(s.y); }

/// One classical Runge-Kutta step. Any non-finite stage propagates into the
/// returned state, so a finite result means every stage was finite.
inline State rk4_advance(const SystemSpec& spec, const State& s, double t, double dt) {
  const double half = 0.5 * dt;
  const State k1 = vector_field(spec, s, t);
  const State k2 = vector_field(spec, {s.x + half * k1.x, s.y + half * k1.y}, t + half);
  const State k3 = vector_field(spec, {s.x + half * k2.x, s.y + half * k2.y}, t + half);
  const State k4 = vector_field(spec, {s.x + dt * k3.x, s.y + dt * k3.y}, t + dt);
  const double w = dt / 6.0;
  return {s.x + w * (k1.x + 2.0 * k2.x + 2.0 * k3.x + k4.x),
          s.y + w * (k1.y + 2.0 * k2.y + 2.0 * k3.y + k4.y)};
}

/// RK4 step returning nullopt when the result is not finite.
std::optional<State> rk4_step(const SystemSpec& spec, const State& s, double t, double dt);

/// Integrates from plan.ic and calls visit(step_index, time, state) for every
/// state from step 0 through step `last_step` inclusive. Time is recomputed as
/// t0 + k * dt at each step so long runs accumulate no drift. Stops early and
/// returns the Divergence when the state becomes non-finite; visit may return
/// false to stop early as well.
template <class Visitor>
std::optional<Divergence> integrate(const SystemSpec& spec, State s, double t0, double dt,
                                    std::int64_t last_step, Visitor&& visit) {
  if (!is_finite(s)) return Divergence{t0};
  if (!visit(std::int64_t{0}, t0, s)) return std::nullopt;
  for (std::int64_t k = 0; k < last_step; ++k) {
    const double t = t0 + static_cast<double>(k) * dt;
    s = rk4_advance(spec, s, t, dt);
    const double t_next = t0 + static_cast<double>(k + 1) * dt;
    if (!is_finite(s)) return Divergence{t_next};
    if (!visit(k + 1, t_next, s)) return std::nullopt;
  }
  return std::nullopt;
}

/// Step indices (relative to t0) at which a sample is recorded.
class SampleSchedule {
 public:
  explicit SampleSchedule(const SimPlan& plan);

  std::int64_t last_step() const { return last_step_; }
  std::int64_t first_step() const { return plan_.transient_steps; }
  /// Whether step `k` is recorded. Must be queried with non-decreasing k.
  bool take(std::int64_t k);

 private:
  SimPlan plan_;
  std::int64_t last_step_ = 0;
  std::int64_t strobe_index_ = 0;
  std::int64_t next_strobe_step_ = 0;
};

/// Runs transient_steps, then records the chosen observable (and the other
/// coordinate as companion) over record_steps steps.
Outcome<Trajectory> simulate(const SystemSpec& spec, const SimPlan& plan);

}  // namespace eemit
