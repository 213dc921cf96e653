#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eemit/dynamics.hpp"
#include "eemit/lyapunov.hpp"

namespace eemit {

enum class AttractorLabel { Periodic, Chaotic, Divergent };

std::string_view to_string(AttractorLabel label);

struct ClassifierSettings {
  MleSettings mle{.dt = 0.01, .transient_steps = 200'000, .total_steps = 200'000, .renorm_every = 100};
  double chaos_threshold = kChaosThreshold;
  /// Stroboscopic cross-check: number of forcing periods sampled after the
  /// transient, the clustering tolerance, and the largest point count still
  /// called periodic.
  std::size_t strobe_samples = 64;
  double strobe_tolerance = 1e-4;
  std::size_t max_periodic_points = 16;
};

struct Classification {
  AttractorLabel label = AttractorLabel::Periodic;
  /// Absent for divergent runs.
  std::optional<double> mle;
  /// Label from the stroboscopic point count; absent when the run diverged
  /// or the spec has no first-forcing frequency.
  std::optional<AttractorLabel> strobe_label;
  std::size_t strobe_points = 0;

  bool disagreement() const { return strobe_label && *strobe_label != label; }
};

/// Chaotic iff the maximal Lyapunov exponent exceeds the threshold; divergent
/// on blow-up; periodic otherwise. The stroboscopic count is reported
/// alongside as an independent check.
Classification classify_attractor(const SystemSpec& spec, const State& ic, const ClassifierSettings& settings = {});

/// Distinct stroboscopic points (period 2*pi/omega1) after the transient,
/// clustered with max-norm tolerance. The step is shrunk so that one period
/// is a whole number of steps. Nullopt on divergence or omega1 == 0.
std::optional<std::size_t> stroboscopic_point_count(const SystemSpec& spec, const State& ic,
                                                    const ClassifierSettings& settings);

struct BasinPlan {
  SystemSpec spec;
  double x_lo = -3.0;
  double x_hi = 3.0;
  double y_lo = -3.0;
  double y_hi = 3.0;
  std::size_t nx = 200;
  std::size_t ny = 200;
  ClassifierSettings classifier;
  std::size_t workers = 1;
};

std::optional<std::string> validate(const BasinPlan& plan);

struct BasinCell {
  State ic;
  Classification result;
};

struct BasinGrid {
  std::size_t nx = 0;
  std::size_t ny = 0;
  /// Row-major with y varying slowest: cell (ix, iy) is at iy * nx + ix.
  std::vector<BasinCell> cells;

  const BasinCell& at(std::size_t ix, std::size_t iy) const { return cells[iy * nx + ix]; }
  double fraction(AttractorLabel label) const;
};

/// Initial condition of grid cell (ix, iy); corners hit the region corners.
State grid_point(const BasinPlan& plan, std::size_t ix, std::size_t iy);

BasinGrid basin_grid(const BasinPlan& plan);

}  // namespace eemit
