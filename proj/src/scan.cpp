#include "eemit/scan.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eemit/parallel.hpp"

namespace eemit {

double Axis::value(std::size_t i) const {
  if (points <= 1) return lo;
  if (i + 1 == points) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
}

namespace {

std::optional<std::string> validate_axis(const Axis& axis, const SystemSpec& spec) {
  if (axis.points < 2) return "axis '" + axis.parameter + "' needs at least 2 points";
  if (!std::isfinite(axis.lo) || !std::isfinite(axis.hi)) return "axis '" + axis.parameter + "' bounds must be finite";
  if (axis.hi < axis.lo) return "axis '" + axis.parameter + "' has hi < lo";
  SystemSpec probe = spec;
  if (parameter_ref(probe, axis.parameter) == nullptr) return "axis parameter '" + axis.parameter + "' is unknown";
  if (!uses_parameter(spec.kind, axis.parameter)) {
    return "axis parameter '" + axis.parameter + "' is not used by kind " + std::string(to_string(spec.kind));
  }
  return std::nullopt;
}

SystemSpec with_parameter(SystemSpec spec, const std::string& name, double value) {
  *parameter_ref(spec, name) = value;
  return spec;
}

}  // namespace

std::optional<std::string> validate(const ScanPlan& plan) {
  if (auto err = validate(plan.spec)) return err;
  if (auto err = validate(plan.sim)) return err;
  if (auto err = validate_axis(plan.axis1, plan.spec)) return err;
  if (plan.axis2) {
    if (auto err = validate_axis(*plan.axis2, plan.spec)) return err;
    if (plan.axis2->parameter == plan.axis1.parameter) return "both axes sweep the same parameter";
  }
  if (plan.ics.empty()) return "at least one initial condition is required";
  for (const auto& ic : plan.ics) {
    if (!is_finite(ic)) return "initial conditions must be finite";
  }
  if (!(plan.n > 0.0)) return "qualifier multiplier n must be positive";
  if (plan.collect.mle) {
    MleSettings m = plan.mle;
    m.dt = plan.sim.dt;
    if (auto err = validate(m)) return err;
  }
  if (plan.workers < 1) return "workers must be >= 1";
  return std::nullopt;
}

PointResult evaluate_point(const SystemSpec& spec, const SimPlan& sim, double n, const CollectFlags& collect,
                           std::size_t bif_cap, const MleSettings& mle_settings) {
  PointResult result;
  SampleSchedule schedule(sim);
  PeakDetector detector;
  PeakSeries peaks;
  auto blowup = integrate(spec, sim.ic, sim.t0, sim.dt, schedule.last_step(),
                          [&](std::int64_t k, double t, const State& s) {
                            if (schedule.take(k) && detector.push(t, observe(sim.observable, s))) {
                              const auto& peak = detector.last_peak();
                              peaks.times.push_back(peak.time);
                              peaks.values.push_back(peak.value);
                              peaks.refined.push_back(peak.refined);
                            }
                            return true;
                          });
  if (blowup) {
    result.divergence = blowup;
    return result;
  }
  result.stats = ee_stats(peaks, n);
  if (collect.bif_maxima) result.bif_maxima = bifurcation_points(peaks, bif_cap);
  if (collect.mle) {
    MleSettings m = mle_settings;
    m.dt = sim.dt;
    auto exponent = mle(spec, sim.ic, m, sim.t0);
    if (!exponent) {
      result.divergence = exponent.divergence();
      result.stats.reset();
      result.bif_maxima.clear();
      return result;
    }
    result.mle = *exponent;
  }
  return result;
}

std::vector<ScanRow> scan_1d(const ScanPlan& plan) {
  if (plan.axis2) throw std::invalid_argument("scan_1d takes a single axis");
  if (auto err = validate(plan)) throw std::invalid_argument(*err);
  const std::size_t n_ic = plan.ics.size();
  const std::size_t units = plan.axis1.points * n_ic;
  auto results = parallel_map(units, plan.workers, [&](std::size_t u) {
    const std::size_t point = u / n_ic;
    const std::size_t ic = u % n_ic;
    SimPlan sim = plan.sim;
    sim.ic = plan.ics[ic];
    auto r = evaluate_point(with_parameter(plan.spec, plan.axis1.parameter, plan.axis1.value(point)), sim, plan.n,
                            plan.collect, plan.bif_cap, plan.mle);
    r.ic_index = ic;
    return r;
  });
  std::vector<ScanRow> rows(plan.axis1.points);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i].param = plan.axis1.value(i);
    for (std::size_t c = 0; c < n_ic; ++c) rows[i].per_ic.push_back(std::move(results[i * n_ic + c]));
  }
  return rows;
}

ScanGrid scan_2d(const ScanPlan& plan) {
  if (!plan.axis2) throw std::invalid_argument("scan_2d needs two axes");
  if (auto err = validate(plan)) throw std::invalid_argument(*err);
  if (plan.ics.size() != 1) throw std::invalid_argument("scan_2d takes exactly one initial condition");
  ScanGrid grid;
  grid.n1 = plan.axis1.points;
  grid.n2 = plan.axis2->points;
  SimPlan sim = plan.sim;
  sim.ic = plan.ics.front();
  auto cells = parallel_map(grid.n1 * grid.n2, plan.workers, [&](std::size_t u) {
    const std::size_t i = u / grid.n2;
    const std::size_t j = u % grid.n2;
    GridCell cell;
    cell.p1 = plan.axis1.value(i);
    cell.p2 = plan.axis2->value(j);
    SystemSpec spec = with_parameter(plan.spec, plan.axis1.parameter, cell.p1);
    spec = with_parameter(spec, plan.axis2->parameter, cell.p2);
    cell.result = evaluate_point(spec, sim, plan.n, plan.collect, plan.bif_cap, plan.mle);
    return cell;
  });
  grid.cells = std::move(cells);
  return grid;
}

std::vector<double> bifurcation_points(const PeakSeries& peaks, std::size_t cap) {
  const auto& source = peaks.refined.size() == peaks.values.size() ? peaks.refined : peaks.values;
  const std::size_t take = std::min(cap, source.size());
  return {source.end() - static_cast<std::ptrdiff_t>(take), source.end()};
}

std::size_t count_distinct(std::vector<double> values, double tol) {
  if (values.empty()) return 0;
  std::sort(values.begin(), values.end());
  std::size_t clusters = 1;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] - values[i - 1] > tol) ++clusters;
  }
  return clusters;
}

}  // namespace eemit
