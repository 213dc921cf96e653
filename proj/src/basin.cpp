#include "eemit/basin.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "eemit/integrator.hpp"
#include "eemit/parallel.hpp"

namespace eemit {

std::string_view to_string(AttractorLabel label) {
  switch (label) {
    case AttractorLabel::Periodic:
      return "periodic";
    case AttractorLabel::Chaotic:
      return "chaotic";
    case AttractorLabel::Divergent:
      return "divergent";
  }
  return "unknown";
}

std::optional<std::size_t> stroboscopic_point_count(const SystemSpec& spec, const State& ic,
                                                    const ClassifierSettings& settings) {
  if (spec.omega1 == 0.0) return std::nullopt;
  const double period = 2.0 * std::numbers::pi / std::abs(spec.omega1);
  const auto steps_per_period = static_cast<std::int64_t>(std::ceil(period / settings.mle.dt));
  const double dt = period / static_cast<double>(steps_per_period);
  // Same transient duration as the exponent, rounded up to whole periods.
  const double transient_time = static_cast<double>(settings.mle.transient_steps) * settings.mle.dt;
  const auto transient_periods = static_cast<std::int64_t>(std::ceil(transient_time / period));

  std::vector<State> points;
  points.reserve(settings.strobe_samples);
  const std::int64_t first = transient_periods * steps_per_period;
  const std::int64_t last = first + static_cast<std::int64_t>(settings.strobe_samples - 1) * steps_per_period;
  auto blowup = integrate(spec, ic, 0.0, dt, last, [&](std::int64_t k, double, const State& s) {
    if (k >= first && (k - first) % steps_per_period == 0) points.push_back(s);
    return true;
  });
  if (blowup) return std::nullopt;

  std::vector<State> clusters;
  for (const auto& p : points) {
    const bool seen = std::any_of(clusters.begin(), clusters.end(), [&](const State& c) {
      return std::abs(c.x - p.x) <= settings.strobe_tolerance && std::abs(c.y - p.y) <= settings.strobe_tolerance;
    });
    if (!seen) clusters.push_back(p);
  }
  return clusters.size();
}

Classification classify_attractor(const SystemSpec& spec, const State& ic, const ClassifierSettings& settings) {
  Classification c;
  auto exponent = mle(spec, ic, settings.mle);
  if (!exponent) {
    c.label = AttractorLabel::Divergent;
    return c;
  }
  c.mle = *exponent;
  c.label = *exponent > settings.chaos_threshold ? AttractorLabel::Chaotic : AttractorLabel::Periodic;
  if (auto count = stroboscopic_point_count(spec, ic, settings)) {
    c.strobe_points = *count;
    c.strobe_label = *count <= settings.max_periodic_points ? AttractorLabel::Periodic : AttractorLabel::Chaotic;
  }
  return c;
}

std::optional<std::string> validate(const BasinPlan& plan) {
  if (auto err = validate(plan.spec)) return err;
  if (auto err = validate(plan.classifier.mle)) return err;
  if (plan.nx < 2 || plan.ny < 2) return "basin resolution must be at least 2x2";
  if (!(plan.x_hi > plan.x_lo) || !(plan.y_hi > plan.y_lo)) return "basin region must be non-degenerate";
  if (!std::isfinite(plan.x_lo) || !std::isfinite(plan.x_hi) || !std::isfinite(plan.y_lo) ||
      !std::isfinite(plan.y_hi)) {
    return "basin region must be finite";
  }
  if (plan.classifier.strobe_samples < 1) return "strobe_samples must be >= 1";
  if (plan.workers < 1) return "workers must be >= 1";
  return std::nullopt;
}

double BasinGrid::fraction(AttractorLabel label) const {
  if (cells.empty()) return 0.0;
  const auto hits = std::count_if(cells.begin(), cells.end(), [&](const BasinCell& c) { return c.result.label == label; });
  return static_cast<double>(hits) / static_cast<double>(cells.size());
}

State grid_point(const BasinPlan& plan, std::size_t ix, std::size_t iy) {
  const double fx = static_cast<double>(ix) / static_cast<double>(plan.nx - 1);
  const double fy = static_cast<double>(iy) / static_cast<double>(plan.ny - 1);
  return {plan.x_lo + (plan.x_hi - plan.x_lo) * fx, plan.y_lo + (plan.y_hi - plan.y_lo) * fy};
}

BasinGrid basin_grid(const BasinPlan& plan) {
  if (auto err = validate(plan)) throw std::invalid_argument(*err);
  BasinGrid grid;
  grid.nx = plan.nx;
  grid.ny = plan.ny;
  grid.cells = parallel_map(plan.nx * plan.ny, plan.workers, [&](std::size_t u) {
    BasinCell cell;
    cell.ic = grid_point(plan, u % plan.nx, u / plan.nx);
    cell.result = classify_attractor(plan.spec, cell.ic, plan.classifier);
    return cell;
  });
  return grid;
}

}  // namespace eemit
