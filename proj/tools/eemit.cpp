#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "eemit/cli.hpp"

namespace {

std::optional<eemit::State> parse_ic(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) return std::nullopt;
  try {
    std::size_t used = 0;
    const double x = std::stod(text.substr(0, comma), &used);
    if (used != comma) return std::nullopt;
    const std::string rest = text.substr(comma + 1);
    const double y = std::stod(rest, &used);
    if (used != rest.size()) return std::nullopt;
    return eemit::State{x, y};
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extreme-event statistics, scans, Lyapunov exponents and basins for forced oscillators"};
  app.require_subcommand(1);

  eemit::cli::RunConfig run;
  run.workers = std::max(1u, std::thread::hardware_concurrency());
  std::string config_path;
  std::string seed_ic;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "flat key=value configuration file");
    sub->add_option("--out", run.output_dir, "output directory")->capture_default_str();
    sub->add_option("--workers", run.workers, "worker threads for scans and basins")->check(CLI::PositiveNumber);
    sub->add_option("--set", run.overrides, "override a configuration key (key=value, repeatable)");
    sub->add_option("--seed-ic", seed_ic, "initial condition x,y");
  };

  const std::pair<const char*, const char*> commands[] = {
      {"simulate", "integrate one trajectory; write trajectory, peaks, stats and histogram"},
      {"stats", "extreme-event statistics without storing the trajectory"},
      {"scan1d", "one-parameter sweep of EE probability and d_max"},
      {"scan2d", "two-parameter EE probability map"},
      {"bifurcate", "bifurcation diagram (attractor maxima against a parameter)"},
      {"mle", "maximal Lyapunov exponent for each initial condition"},
      {"basin", "periodic/chaotic classification over a grid of initial conditions"},
  };
  for (const auto& [name, help] : commands) add_common(app.add_subcommand(name, help));

  auto* repro = app.add_subcommand("repro", "run a reproduction preset (use 'list' to see them)");
  add_common(repro);
  repro->add_option("preset", run.preset, "preset name")->required();

  CLI11_PARSE(app, argc, argv);

  const auto* chosen = app.get_subcommands().front();
  run.command = *eemit::cli::parse_command(chosen->get_name());
  if (!config_path.empty()) run.config_path = config_path;
  if (!seed_ic.empty()) {
    run.seed_ic = parse_ic(seed_ic);
    if (!run.seed_ic) {
      std::cerr << "error: --seed-ic expects x,y\n";
      return eemit::kExitParse;
    }
  }
  if (run.command == eemit::cli::Command::Repro && run.preset == "list") {
    for (const auto& p : eemit::cli::presets()) std::cout << p.name << "\t" << p.description << '\n';
    return eemit::kExitOk;
  }
  return eemit::cli::run_command(run);
}
