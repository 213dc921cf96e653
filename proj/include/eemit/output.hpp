#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "eemit/basin.hpp"
#include "eemit/events.hpp"
#include "eemit/integrator.hpp"
#include "eemit/scan.hpp"

namespace eemit::output {

// CSV writers. Every file has a header row; numbers use 17 significant
// digits; missing values are empty fields.

/// t,x,y
std::string trajectory_csv(const Trajectory& traj, Observable observable);
/// t,value
std::string peaks_csv(const PeakSeries& peaks);
/// n,mean,sigma,threshold,peak_count,ee_count,probability,d_max
std::string stats_csv(const EEStats& stats);
/// center,density,count
std::string histogram_csv(const Histogram& h);
/// param,ic_index,probability,d_max[,mle],diverged
std::string scan1d_csv(const std::vector<ScanRow>& rows, bool with_mle);
/// param,ic_index,value
std::string bifurcation_csv(const std::vector<ScanRow>& rows);
/// p1,p2,probability,diverged
std::string scan2d_csv(const ScanGrid& grid);
/// x0,y0,label
std::string basin_csv(const BasinGrid& grid);
/// x0,y0,mle,strobe_points,strobe_label,disagree
std::string basin_diagnostics_csv(const BasinGrid& grid);

// Quick-look SVG plots.

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
};

std::string svg_lines(const std::string& title, const std::string& x_label, const std::vector<Series>& series);
std::string svg_scatter(const std::string& title, const std::string& x_label, const std::vector<Series>& series);
/// Row-major raster of values in [0, 1] (NaN drawn as a hatch colour), axis1 down rows.
std::string svg_raster(const std::string& title, std::size_t rows, std::size_t cols, const std::vector<double>& values);

void write_file(const std::filesystem::path& path, const std::string& contents);

}  // namespace eemit::output
