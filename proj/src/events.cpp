#include "eemit/events.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace eemit {

PeakSeries detect_peaks(std::span<const double> times, std::span<const double> values) {
  if (times.size() != values.size()) throw std::invalid_argument("times and values differ in length");
  PeakSeries peaks;
  PeakDetector detector;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (detector.push(times[i], values[i])) {
      const auto& peak = detector.last_peak();
      peaks.times.push_back(peak.time);
      peaks.values.push_back(peak.value);
      peaks.refined.push_back(peak.refined);
    }
  }
  return peaks;
}

PeakSeries detect_peaks(const Trajectory& traj) { return detect_peaks(traj.times, traj.values); }

EEStats ee_stats(std::span<const double> peak_values, double n) {
  EEStats st;
  st.n = n;
  st.peak_count = peak_values.size();
  if (peak_values.empty()) {
    st.degenerate = true;
    st.threshold = 0.0;
    return st;
  }
  const double count = static_cast<double>(peak_values.size());
  double sum = 0.0;
  for (double v : peak_values) sum += v;
  st.mean = sum / count;
  double ss = 0.0;
  double max_peak = peak_values.front();
  for (double v : peak_values) {
    const double d = v - st.mean;
    ss += d * d;
    max_peak = std::max(max_peak, v);
  }
  st.sigma = std::sqrt(ss / count);
  st.threshold = st.mean + n * st.sigma;
  st.ee_count = static_cast<std::size_t>(
      std::count_if(peak_values.begin(), peak_values.end(), [&](double v) { return v > st.threshold; }));
  st.probability = static_cast<double>(st.ee_count) / count;
  if (st.sigma > 0.0) {
    st.d_max = (max_peak - st.mean) / st.sigma;
  } else {
    st.degenerate = true;
    st.d_max = 0.0;
  }
  return st;
}

Histogram peak_histogram(std::span<const double> peak_values, std::size_t bins,
                         std::optional<std::pair<double, double>> range) {
  if (bins == 0) throw std::invalid_argument("histogram needs at least one bin");
  Histogram h;
  if (peak_values.empty()) return h;
  double lo = 0.0;
  double hi = 0.0;
  if (range) {
    std::tie(lo, hi) = *range;
    if (!(hi >= lo)) throw std::invalid_argument("histogram range must satisfy lo <= hi");
  } else {
    const auto [mn, mx] = std::minmax_element(peak_values.begin(), peak_values.end());
    lo = *mn;
    hi = *mx;
  }
  if (hi == lo) {
    lo -= 0.5;
    hi += 0.5;
  }
  h.lo = lo;
  h.hi = hi;
  h.counts.assign(bins, 0);
  const double width = (hi - lo) / static_cast<double>(bins);
  std::size_t total = 0;
  for (double v : peak_values) {
    if (v < lo || v > hi) continue;
    auto idx = static_cast<std::size_t>((v - lo) / width);
    if (idx >= bins) idx = bins - 1;
    ++h.counts[idx];
    ++total;
  }
  h.centers.resize(bins);
  h.densities.assign(bins, 0.0);
  for (std::size_t i = 0; i < bins; ++i) {
    h.centers[i] = lo + (static_cast<double>(i) + 0.5) * width;
    if (total > 0) h.densities[i] = static_cast<double>(h.counts[i]) / (static_cast<double>(total) * width);
  }
  return h;
}

double mass_above(const Histogram& h, double threshold) {
  const double width = h.width();
  double mass = 0.0;
  for (std::size_t i = 0; i < h.centers.size(); ++i) {
    const double left = h.centers[i] - 0.5 * width;
    const double right = left + width;
    if (right <= threshold) continue;
    // Mass is taken as uniform within a bin straddling the threshold.
    const double covered = left >= threshold ? width : right - threshold;
    mass += h.densities[i] * covered;
  }
  return mass;
}

}  // namespace eemit
