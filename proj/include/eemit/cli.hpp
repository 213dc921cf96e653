#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "eemit/config.hpp"

namespace eemit::cli {

enum class Command { Simulate, Stats, Scan1d, Scan2d, Bifurcate, Mle, Basin, Repro };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command command);

struct RunConfig {
  Command command = Command::Simulate;
  /// Preset name for `repro`.
  std::string preset;
  std::optional<std::filesystem::path> config_path;
  std::filesystem::path output_dir = ".";
  std::size_t workers = 1;
  std::vector<std::string> overrides;
  std::optional<State> seed_ic;
};

/// One command run by a reproduction preset. Files go to
/// <out>/<preset>/<subdir> (or <out>/<preset> when subdir is empty).
struct PresetRun {
  std::string subdir;
  Command command;
  std::string config;
};

struct Preset {
  std::string name;
  std::string description;
  std::vector<PresetRun> runs;
};

const std::vector<Preset>& presets();
const Preset* find_preset(std::string_view name);

/// Executes a single non-repro command on an already built configuration.
/// Throws ConfigError for plan problems and std::runtime_error for fatal
/// runtime failures.
void execute(Command command, const Config& cfg, const std::filesystem::path& out_dir, std::size_t workers);

/// Top-level entry: loads configuration, runs, and maps failures to exit
/// codes (0 ok, 1 runtime, 2 parse, 3 validation). Errors go to stderr.
int run_command(const RunConfig& run);

}  // namespace eemit::cli
