#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "eemit/integrator.hpp"

namespace eemit {

struct PeakSeries {
  std::vector<double> values;
  std::vector<double> times;
  /// Sub-sample (parabolic) peak heights, used for bifurcation output only.
  std::vector<double> refined;

  std::size_t size() const { return values.size(); }
  bool empty() const { return values.empty(); }
};

/// Streaming local-maximum detector.
///
/// A peak is a sample that is strictly above its predecessor and is followed
/// (after any run of equal samples) by a strictly smaller one. Plateaus are
/// reported once, at their first sample. Runs that reach the end of the
/// stream are not reported.
class PeakDetector {
 public:
  struct Peak {
    double time = 0.0;
    double value = 0.0;
    /// Vertex of the parabola through the peak sample and its two
    /// neighbours; equals `value` for plateau peaks.
    double refined = 0.0;
  };

  /// Feeds one sample; returns true when this sample confirmed a peak, which
  /// is then available from last_peak().
  bool push(double t, double v) {
    bool found = false;
    if (have_prev_) {
      if (v > prev_) {
        candidate_ = true;
        plateau_ = false;
        cand_ = {t, v, v};
        cand_before_ = prev_;
      } else if (v < prev_) {
        if (candidate_) {
          peak_ = cand_;
          if (!plateau_) peak_.refined = parabolic_vertex(cand_before_, cand_.value, v);
          found = true;
        }
        candidate_ = false;
      } else {
        plateau_ = true;
      }
    }
    have_prev_ = true;
    prev_ = v;
    return found;
  }

  const Peak& last_peak() const { return peak_; }

  static double parabolic_vertex(double before, double at, double after) {
    const double curvature = before - 2.0 * at + after;
    if (!(curvature < 0.0)) return at;
    const double offset = 0.5 * (before - after) / curvature;
    return at - 0.25 * (before - after) * offset;
  }

 private:
  bool have_prev_ = false;
  bool candidate_ = false;
  bool plateau_ = false;
  double prev_ = 0.0;
  double cand_before_ = 0.0;
  Peak cand_;
  Peak peak_;
};

PeakSeries detect_peaks(std::span<const double> times, std::span<const double> values);
PeakSeries detect_peaks(const Trajectory& traj);

struct EEStats {
  double n = 0.0;
  double mean = 0.0;
  double sigma = 0.0;
  double threshold = 0.0;
  std::size_t peak_count = 0;
  std::size_t ee_count = 0;
  double probability = 0.0;
  double d_max = 0.0;
  /// Set when sigma == 0 (including the empty series); d_max is then 0.
  bool degenerate = false;
};

/// Qualifier threshold mean + n * sigma over all peaks (population sigma),
/// the count and fraction of peaks strictly above it, and
/// d_max = (max peak - mean) / sigma.
EEStats ee_stats(std::span<const double> peak_values, double n);
inline EEStats ee_stats(const PeakSeries& peaks, double n) { return ee_stats(peaks.values, n); }

struct Histogram {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> centers;
  /// Probability density per bin; sum(density * width) == 1 over the binned range.
  std::vector<double> densities;
  std::vector<std::size_t> counts;

  double width() const { return centers.empty() ? 0.0 : (hi - lo) / static_cast<double>(centers.size()); }
};

/// Normalized peak histogram. The default range is [min, max] of the peaks;
/// a zero-width range is widened by 0.5 on each side. Peaks outside an
/// explicit range are dropped before normalizing. Empty input yields an
/// empty histogram.
Histogram peak_histogram(std::span<const double> peak_values, std::size_t bins,
                         std::optional<std::pair<double, double>> range = std::nullopt);

/// Histogram mass above `threshold`, treating mass as uniform inside each bin.
double mass_above(const Histogram& h, double threshold);

}  // namespace eemit
