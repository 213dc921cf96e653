#include "eemit/cli.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "eemit/output.hpp"

namespace eemit::cli {

namespace fs = std::filesystem;

namespace {

constexpr std::array<std::string_view, 8> kCommandNames = {"simulate",  "stats", "scan1d", "scan2d",
                                                           "bifurcate", "mle",   "basin",  "repro"};

// Probability above which a map cell is drawn white.
constexpr double kMapSaturation = 4e-5;

EEStats stream_stats(const SystemSpec& spec, const SimPlan& sim, double n, PeakSeries& peaks) {
  SampleSchedule schedule(sim);
  PeakDetector detector;
  auto blowup = integrate(spec, sim.ic, sim.t0, sim.dt, schedule.last_step(), [&](std::int64_t k, double t, const State& s) {
    if (schedule.take(k) && detector.push(t, observe(sim.observable, s))) {
      const auto& p = detector.last_peak();
      peaks.times.push_back(p.time);
      peaks.values.push_back(p.value);
      peaks.refined.push_back(p.refined);
    }
    return true;
  });
  if (blowup) throw std::runtime_error("trajectory diverged at t=" + format_number(blowup->time));
  return ee_stats(peaks, n);
}

void write_event_outputs(const fs::path& dir, const Config& cfg, const PeakSeries& peaks, const EEStats& stats) {
  output::write_file(dir / "peaks.csv", output::peaks_csv(peaks));
  output::write_file(dir / "stats.csv", output::stats_csv(stats));
  const auto hist = peak_histogram(peaks.values, cfg.bins);
  output::write_file(dir / "histogram.csv", output::histogram_csv(hist));
  output::write_file(dir / "histogram.svg",
                     output::svg_lines("peak PDF (threshold " + format_number(stats.threshold) + ")", "peak value",
                                       {{"density", hist.centers, hist.densities}}));
}

void write_scan1d(const fs::path& dir, const Config& cfg, const std::vector<ScanRow>& rows, bool bif_only) {
  const std::string& name = cfg.axis1->parameter;
  if (!bif_only) {
    output::write_file(dir / "scan1d.csv", output::scan1d_csv(rows, cfg.collect.mle));
    std::vector<output::Series> prob, dmax;
    const std::size_t n_ic = rows.empty() ? 0 : rows.front().per_ic.size();
    for (std::size_t c = 0; c < n_ic; ++c) {
      output::Series p{"ic " + std::to_string(c), {}, {}};
      output::Series d{"ic " + std::to_string(c), {}, {}};
      for (const auto& row : rows) {
        const auto& r = row.per_ic[c];
        p.x.push_back(row.param);
        d.x.push_back(row.param);
        p.y.push_back(r.stats ? r.stats->probability : std::numeric_limits<double>::quiet_NaN());
        d.y.push_back(r.stats ? r.stats->d_max : std::numeric_limits<double>::quiet_NaN());
      }
      prob.push_back(std::move(p));
      dmax.push_back(std::move(d));
    }
    output::write_file(dir / "probability.svg", output::svg_lines("EE probability", name, prob));
    output::write_file(dir / "d_max.svg", output::svg_lines("d_max", name, dmax));
    if (cfg.collect.mle) {
      std::vector<output::Series> lyap;
      for (std::size_t c = 0; c < n_ic; ++c) {
        output::Series s{"ic " + std::to_string(c), {}, {}};
        for (const auto& row : rows) {
          s.x.push_back(row.param);
          s.y.push_back(row.per_ic[c].mle.value_or(std::numeric_limits<double>::quiet_NaN()));
        }
        lyap.push_back(std::move(s));
      }
      output::write_file(dir / "mle.svg", output::svg_lines("maximal Lyapunov exponent", name, lyap));
    }
  }
  if (cfg.collect.bif_maxima || bif_only) {
    output::write_file(dir / "bifurcation.csv", output::bifurcation_csv(rows));
    std::vector<output::Series> pts;
    const std::size_t n_ic = rows.empty() ? 0 : rows.front().per_ic.size();
    for (std::size_t c = 0; c < n_ic; ++c) {
      output::Series s{"ic " + std::to_string(c), {}, {}};
      for (const auto& row : rows) {
        for (double v : row.per_ic[c].bif_maxima) {
          s.x.push_back(row.param);
          s.y.push_back(v);
        }
      }
      pts.push_back(std::move(s));
    }
    output::write_file(dir / "bifurcation.svg", output::svg_scatter("bifurcation diagram", name, pts));
  }
}

}  // namespace

std::optional<Command> parse_command(std::string_view name) {
  for (std::size_t i = 0; i < kCommandNames.size(); ++i) {
    if (kCommandNames[i] == name) return static_cast<Command>(i);
  }
  return std::nullopt;
}

std::string_view to_string(Command command) { return kCommandNames[static_cast<std::size_t>(command)]; }

void execute(Command command, const Config& cfg, const fs::path& out_dir, std::size_t workers) {
  fs::create_directories(out_dir);
  switch (command) {
    case Command::Simulate: {
      auto traj = simulate(cfg.spec, cfg.sim);
      if (!traj) throw std::runtime_error("trajectory diverged at t=" + format_number(traj.divergence().time));
      output::write_file(out_dir / "trajectory.csv", output::trajectory_csv(*traj, cfg.sim.observable));
      const auto peaks = detect_peaks(*traj);
      const auto stats = ee_stats(peaks, cfg.n);
      write_event_outputs(out_dir, cfg, peaks, stats);
      output::write_file(out_dir / "timeseries.svg",
                         output::svg_lines("time series", "t",
                                           {{std::string(to_string(cfg.sim.observable)), traj->times, traj->values}}));
      output::write_file(out_dir / "phase.svg",
                         output::svg_lines("phase portrait", std::string(to_string(cfg.sim.observable)),
                                           {{"orbit", traj->values, traj->companion}}));
      break;
    }
    case Command::Stats: {
      PeakSeries peaks;
      const auto stats = stream_stats(cfg.spec, cfg.sim, cfg.n, peaks);
      write_event_outputs(out_dir, cfg, peaks, stats);
      break;
    }
    case Command::Scan1d:
    case Command::Bifurcate: {
      Config c = cfg;
      if (c.axis2) throw ConfigError(kExitValidation, "scan1d takes only axis1");
      if (command == Command::Bifurcate) c.collect.bif_maxima = true;
      const auto rows = scan_1d(make_scan_plan(c, workers));
      write_scan1d(out_dir, c, rows, command == Command::Bifurcate);
      break;
    }
    case Command::Scan2d: {
      if (!cfg.axis2) throw ConfigError(kExitValidation, "scan2d requires axis2");
      Config c = cfg;
      if (c.ics.size() != 1) throw ConfigError(kExitValidation, "scan2d takes exactly one initial condition");
      const auto grid = scan_2d(make_scan_plan(c, workers));
      output::write_file(out_dir / "scan2d.csv", output::scan2d_csv(grid));
      std::vector<double> shade;
      shade.reserve(grid.cells.size());
      for (const auto& cell : grid.cells) {
        shade.push_back(cell.result.stats ? std::min(1.0, cell.result.stats->probability / kMapSaturation)
                                          : std::numeric_limits<double>::quiet_NaN());
      }
      output::write_file(out_dir / "scan2d.svg",
                         output::svg_raster("EE probability: " + cfg.axis1->parameter + " (rows) vs " +
                                                cfg.axis2->parameter + " (columns)",
                                            grid.n1, grid.n2, shade));
      break;
    }
    case Command::Mle: {
      std::string csv = "ic_index,x0,y0,mle,label\n";
      for (std::size_t i = 0; i < cfg.ics.size(); ++i) {
        const auto& ic = cfg.ics[i];
        auto exponent = mle(cfg.spec, ic, cfg.mle, cfg.sim.t0);
        csv += std::to_string(i) + ',' + format_number(ic.x) + ',' + format_number(ic.y) + ',';
        if (exponent) {
          csv += format_number(*exponent) + ',' + (*exponent > kChaosThreshold ? "chaotic" : "periodic") + '\n';
        } else {
          csv += ",divergent\n";
        }
      }
      output::write_file(out_dir / "mle.csv", csv);
      break;
    }
    case Command::Basin: {
      const auto plan = make_basin_plan(cfg, workers);
      const auto grid = basin_grid(plan);
      output::write_file(out_dir / "basin.csv", output::basin_csv(grid));
      output::write_file(out_dir / "basin_diagnostics.csv", output::basin_diagnostics_csv(grid));
      std::vector<double> shade;
      shade.reserve(grid.cells.size());
      for (const auto& cell : grid.cells) {
        switch (cell.result.label) {
          case AttractorLabel::Chaotic: shade.push_back(0.6); break;
          case AttractorLabel::Periodic: shade.push_back(std::numeric_limits<double>::quiet_NaN()); break;
          case AttractorLabel::Divergent: shade.push_back(0.0); break;
        }
      }
      output::write_file(out_dir / "basin.svg",
                         output::svg_raster("basin: grey chaotic, red periodic, black divergent", grid.ny, grid.nx, shade));
      break;
    }
    case Command::Repro:
      throw ConfigError(kExitValidation, "repro cannot be nested");
  }
}

int run_command(const RunConfig& run) {
  try {
    if (run.workers < 1) throw ConfigError(kExitValidation, "workers must be >= 1");
    KeyValues overrides;
    for (const auto& o : run.overrides) overrides.push_back(parse_override(o));
    if (run.seed_ic) {
      overrides.emplace_back("x0", format_number(run.seed_ic->x));
      overrides.emplace_back("y0", format_number(run.seed_ic->y));
      overrides.emplace_back("ics", format_number(run.seed_ic->x) + "," + format_number(run.seed_ic->y));
    }

    if (run.command == Command::Repro) {
      const Preset* preset = find_preset(run.preset);
      if (!preset) throw ConfigError(kExitValidation, "unknown preset '" + run.preset + "'");
      for (const auto& r : preset->runs) {
        const Config cfg = parse_config(r.config, overrides);
        fs::path dir = run.output_dir / preset->name;
        if (!r.subdir.empty()) dir /= r.subdir;
        std::cerr << "repro " << preset->name << (r.subdir.empty() ? "" : "/" + r.subdir) << ": "
                  << to_string(r.command) << '\n';
        execute(r.command, cfg, dir, run.workers);
      }
      return kExitOk;
    }

    std::string text;
    if (run.config_path) {
      std::ifstream in(*run.config_path);
      if (!in) throw ConfigError(kExitParse, "cannot read config '" + run.config_path->string() + "'");
      std::ostringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    } else if (overrides.empty()) {
      throw ConfigError(kExitParse, "no configuration given (use --config or --set)");
    }
    const Config cfg = run.config_path ? parse_config(text, overrides) : build_config(overrides);
    execute(run.command, cfg, run.output_dir, run.workers);
    return kExitOk;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code();
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
}

}  // namespace eemit::cli
