#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "eemit/dynamics.hpp"
#include "eemit/events.hpp"
#include "eemit/integrator.hpp"
#include "eemit/lyapunov.hpp"

namespace eemit {

/// Default number of integration steps recorded per scan point.
inline constexpr std::int64_t kDefaultScanRecordSteps = 500'000;
/// Default cap on the number of maxima kept per point for bifurcation output.
inline constexpr std::size_t kDefaultBifurcationCap = 512;
/// Absolute tolerance for clustering bifurcation maxima.
inline constexpr double kMaximaClusterTolerance = 1e-6;

struct Axis {
  std::string parameter;
  double lo = 0.0;
  double hi = 0.0;
  std::size_t points = 2;

  /// Grid value i; the last point is exactly hi.
  double value(std::size_t i) const;
};

struct CollectFlags {
  bool probability = true;
  bool d_max = true;
  bool bif_maxima = false;
  bool mle = false;
};

struct ScanPlan {
  SystemSpec spec;
  Axis axis1;
  std::optional<Axis> axis2;
  /// ic in `sim` is ignored; every entry of `ics` is run instead.
  SimPlan sim;
  double n = 8.0;
  std::vector<State> ics;
  CollectFlags collect;
  std::size_t bif_cap = kDefaultBifurcationCap;
  /// dt is taken from `sim`.
  MleSettings mle;
  std::size_t workers = 1;
};

std::optional<std::string> validate(const ScanPlan& plan);

/// Result of one (grid point, initial condition) unit.
struct PointResult {
  std::size_t ic_index = 0;
  std::optional<Divergence> divergence;
  /// Absent when the run diverged.
  std::optional<EEStats> stats;
  std::optional<double> mle;
  std::vector<double> bif_maxima;

  bool diverged() const { return divergence.has_value(); }
};

struct ScanRow {
  double param = 0.0;
  std::vector<PointResult> per_ic;
};

struct GridCell {
  double p1 = 0.0;
  double p2 = 0.0;
  PointResult result;
};

struct ScanGrid {
  std::size_t n1 = 0;
  std::size_t n2 = 0;
  /// Row-major: cell (i, j) is at i * n2 + j, axis1 varying slowest.
  std::vector<GridCell> cells;

  const GridCell& at(std::size_t i, std::size_t j) const { return cells[i * n2 + j]; }
};

/// Simulates one point and gathers the requested statistics. The trajectory
/// is streamed through a peak detector and never stored.
PointResult evaluate_point(const SystemSpec& spec, const SimPlan& sim, double n, const CollectFlags& collect,
                           std::size_t bif_cap, const MleSettings& mle_settings);

/// Runs simulate() and ee_stats() for every axis value and initial condition.
/// Rows are ordered by parameter value and are identical for any worker count.
std::vector<ScanRow> scan_1d(const ScanPlan& plan);

/// Two-parameter sweep over a single initial condition.
ScanGrid scan_2d(const ScanPlan& plan);

/// Last `cap` sub-sample peak heights of the series, oldest first.
std::vector<double> bifurcation_points(const PeakSeries& peaks, std::size_t cap = kDefaultBifurcationCap);

/// Number of clusters among `values`: after sorting, a gap larger than `tol`
/// between neighbours starts a new cluster.
std::size_t count_distinct(std::vector<double> values, double tol = kMaximaClusterTolerance);

}  // namespace eemit
