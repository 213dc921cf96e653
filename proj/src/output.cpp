#include "eemit/output.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "eemit/config.hpp"

namespace eemit::output {

namespace {

std::string num(double v) { return format_number(v); }

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};

struct Frame {
  double x0, x1, y0, y1;
  static constexpr double kWidth = 640, kHeight = 400, kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const { return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom); }
};

Frame fit(const std::vector<Series>& series) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : series) {
    for (double v : s.x) if (std::isfinite(v)) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y) if (std::isfinite(v)) y0 = std::min(y0, v), y1 = std::max(y1, v);
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1;
  if (!std::isfinite(y0)) y0 = 0, y1 = 1;
  if (x1 == x0) x0 -= 0.5, x1 += 0.5;
  if (y1 == y0) y0 -= 0.5, y1 += 0.5;
  const double pad = 0.05 * (y1 - y0);
  return {x0, x1, y0 - pad, y1 + pad};
}

void header(std::ostringstream& os, const std::string& title, const std::string& x_label, const Frame& f) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << Frame::kWidth << "\" height=\"" << Frame::kHeight
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << Frame::kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
     << "</text>\n";
  os << "<rect x=\"" << Frame::kLeft << "\" y=\"" << Frame::kTop << "\" width=\""
     << Frame::kWidth - Frame::kLeft - Frame::kRight << "\" height=\"" << Frame::kHeight - Frame::kTop - Frame::kBottom
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "<text x=\"" << Frame::kWidth / 2 << "\" y=\"" << Frame::kHeight - 10
     << "\" text-anchor=\"middle\" font-size=\"13\">" << x_label << "</text>\n";
  auto tick = [&](double x, double y, const std::string& label, const char* anchor) {
    os << "<text x=\"" << x << "\" y=\"" << y << "\" text-anchor=\"" << anchor << "\" font-size=\"11\">" << label
       << "</text>\n";
  };
  char buf[32];
  for (double v : {f.x0, f.x1}) {
    std::snprintf(buf, sizeof buf, "%.4g", v);
    tick(f.px(v), Frame::kHeight - Frame::kBottom + 16, buf, "middle");
  }
  for (double v : {f.y0, f.y1}) {
    std::snprintf(buf, sizeof buf, "%.4g", v);
    tick(Frame::kLeft - 6, f.py(v) + 4, buf, "end");
  }
}

void legend(std::ostringstream& os, const std::vector<Series>& series) {
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << "<text x=\"" << Frame::kLeft + 10 << "\" y=\"" << Frame::kTop + 16 + 14 * static_cast<double>(i)
       << "\" font-size=\"11\" fill=\"" << kPalette[i % 6] << "\">" << series[i].name << "</text>\n";
  }
}

}  // namespace

std::string trajectory_csv(const Trajectory& traj, Observable observable) {
  std::string out = "t,x,y\n";
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const double x = observable == Observable::X ? traj.values[i] : traj.companion[i];
    const double y = observable == Observable::X ? traj.companion[i] : traj.values[i];
    out += num(traj.times[i]) + ',' + num(x) + ',' + num(y) + '\n';
  }
  return out;
}

std::string peaks_csv(const PeakSeries& peaks) {
  std::string out = "t,value\n";
  for (std::size_t i = 0; i < peaks.size(); ++i) out += num(peaks.times[i]) + ',' + num(peaks.values[i]) + '\n';
  return out;
}

std::string stats_csv(const EEStats& s) {
  return "n,mean,sigma,threshold,peak_count,ee_count,probability,d_max\n" + num(s.n) + ',' + num(s.mean) + ',' +
         num(s.sigma) + ',' + num(s.threshold) + ',' + std::to_string(s.peak_count) + ',' +
         std::to_string(s.ee_count) + ',' + num(s.probability) + ',' + num(s.d_max) + '\n';
}

std::string histogram_csv(const Histogram& h) {
  std::string out = "center,density,count\n";
  for (std::size_t i = 0; i < h.centers.size(); ++i) {
    out += num(h.centers[i]) + ',' + num(h.densities[i]) + ',' + std::to_string(h.counts[i]) + '\n';
  }
  return out;
}

std::string scan1d_csv(const std::vector<ScanRow>& rows, bool with_mle) {
  std::string out = with_mle ? "param,ic_index,probability,d_max,mle,diverged\n" : "param,ic_index,probability,d_max,diverged\n";
  for (const auto& row : rows) {
    for (const auto& r : row.per_ic) {
      out += num(row.param) + ',' + std::to_string(r.ic_index) + ',';
      out += r.stats ? num(r.stats->probability) + ',' + num(r.stats->d_max) : std::string(",");
      if (with_mle) out += ',' + (r.mle ? num(*r.mle) : std::string());
      out += r.diverged() ? ",1\n" : ",0\n";
    }
  }
  return out;
}

std::string bifurcation_csv(const std::vector<ScanRow>& rows) {
  std::string out = "param,ic_index,value\n";
  for (const auto& row : rows) {
    const std::string p = num(row.param);
    for (const auto& r : row.per_ic) {
      const std::string ic = std::to_string(r.ic_index);
      for (double v : r.bif_maxima) out += p + ',' + ic + ',' + num(v) + '\n';
    }
  }
  return out;
}

std::string scan2d_csv(const ScanGrid& grid) {
  std::string out = "p1,p2,probability,diverged\n";
  for (const auto& cell : grid.cells) {
    out += num(cell.p1) + ',' + num(cell.p2) + ',';
    out += cell.result.stats ? num(cell.result.stats->probability) : std::string();
    out += cell.result.diverged() ? ",1\n" : ",0\n";
  }
  return out;
}

std::string basin_csv(const BasinGrid& grid) {
  std::string out = "x0,y0,label\n";
  for (const auto& cell : grid.cells) {
    out += num(cell.ic.x) + ',' + num(cell.ic.y) + ',' + std::string(to_string(cell.result.label)) + '\n';
  }
  return out;
}

std::string basin_diagnostics_csv(const BasinGrid& grid) {
  std::string out = "x0,y0,mle,strobe_points,strobe_label,disagree\n";
  for (const auto& cell : grid.cells) {
    const auto& r = cell.result;
    out += num(cell.ic.x) + ',' + num(cell.ic.y) + ',' + (r.mle ? num(*r.mle) : std::string()) + ',' +
           std::to_string(r.strobe_points) + ',' + (r.strobe_label ? std::string(to_string(*r.strobe_label)) : "") +
           ',' + (r.disagreement() ? "1" : "0") + '\n';
  }
  return out;
}

std::string svg_lines(const std::string& title, const std::string& x_label, const std::vector<Series>& series) {
  const Frame f = fit(series);
  std::ostringstream os;
  header(os, title, x_label, f);
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << kPalette[i % 6] << "\" points=\"";
    for (std::size_t k = 0; k < series[i].x.size(); ++k) {
      if (std::isfinite(series[i].y[k])) os << f.px(series[i].x[k]) << ',' << f.py(series[i].y[k]) << ' ';
    }
    os << "\"/>\n";
  }
  legend(os, series);
  os << "</svg>\n";
  return os.str();
}

std::string svg_scatter(const std::string& title, const std::string& x_label, const std::vector<Series>& series) {
  const Frame f = fit(series);
  std::ostringstream os;
  header(os, title, x_label, f);
  for (std::size_t i = 0; i < series.size(); ++i) {
    os << "<g fill=\"" << kPalette[i % 6] << "\">\n";
    for (std::size_t k = 0; k < series[i].x.size(); ++k) {
      os << "<rect x=\"" << f.px(series[i].x[k]) << "\" y=\"" << f.py(series[i].y[k])
         << "\" width=\"1.2\" height=\"1.2\"/>\n";
    }
    os << "</g>\n";
  }
  legend(os, series);
  os << "</svg>\n";
  return os.str();
}

std::string svg_raster(const std::string& title, std::size_t rows, std::size_t cols, const std::vector<double>& values) {
  if (values.size() != rows * cols) throw std::invalid_argument("raster size mismatch");
  constexpr double kSize = 400;
  const double cw = kSize / static_cast<double>(std::max<std::size_t>(cols, 1));
  const double ch = kSize / static_cast<double>(std::max<std::size_t>(rows, 1));
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kSize + 40 << "\" height=\"" << kSize + 60
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << (kSize + 40) / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">" << title
     << "</text>\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = values[r * cols + c];
      char colour[8];
      if (std::isnan(v)) {
        std::snprintf(colour, sizeof colour, "#cc3366");
      } else {
        const int level = static_cast<int>(std::lround(255.0 * std::clamp(v, 0.0, 1.0)));
        std::snprintf(colour, sizeof colour, "#%02x%02x%02x", level, level, level);
      }
      // Row 0 at the bottom so the second axis increases upwards.
      os << "<rect x=\"" << 20 + static_cast<double>(c) * cw << "\" y=\""
         << 40 + kSize - static_cast<double>(r + 1) * ch << "\" width=\"" << cw + 0.3 << "\" height=\"" << ch + 0.3
         << "\" fill=\"" << colour << "\"/>\n";
    }
  }
  os << "</svg>\n";
  return os.str();
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << contents;
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

}  // namespace eemit::output
