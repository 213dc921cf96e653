#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "eemit/basin.hpp"
#include "eemit/dynamics.hpp"
#include "eemit/integrator.hpp"
#include "eemit/lyapunov.hpp"
#include "eemit/scan.hpp"

namespace eemit {

enum ExitCode : int { kExitOk = 0, kExitRuntime = 1, kExitParse = 2, kExitValidation = 3 };

/// Configuration problem carrying the process exit code it maps to.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(ExitCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ExitCode code() const { return code_; }

 private:
  ExitCode code_;
};

using KeyValues = std::vector<std::pair<std::string, std::string>>;

/// Default number of recorded steps for single-point runs.
inline constexpr std::int64_t kDefaultRecordSteps = 2'000'000;

/// Everything a command may need, fully validated and with kind-dependent
/// defaults filled in.
struct Config {
  SystemSpec spec;
  SimPlan sim;
  /// False when record_steps was left at its default, so scans may use the
  /// shorter per-point default.
  bool record_steps_given = false;
  double n = 8.0;
  std::size_t bins = 50;

  std::optional<Axis> axis1;
  std::optional<Axis> axis2;
  std::vector<State> ics;
  CollectFlags collect;
  std::size_t bif_cap = kDefaultBifurcationCap;
  MleSettings mle;

  BasinPlan basin;
};

/// Splits the flat `key=value` format: one pair per line, `#` starts a
/// comment, blank lines ignored. Throws ConfigError(kExitParse) on malformed
/// lines or when the text holds no pairs at all.
KeyValues parse_key_values(std::string_view text);

/// Interprets pairs (later pairs win). Unknown keys and invalid values throw
/// ConfigError(kExitValidation); unparseable numbers throw kExitParse.
Config build_config(const KeyValues& pairs);

/// parse_key_values + overrides + build_config.
Config parse_config(std::string_view text, const KeyValues& overrides = {});

/// Parses a single `key=value` override.
std::pair<std::string, std::string> parse_override(std::string_view text);

/// Keys accepted by build_config.
const std::vector<std::string_view>& known_keys();

/// Spec as config text: kind first, then every parameter the kind uses.
std::string serialize(const SystemSpec& spec);

/// 17 significant digits, enough to round-trip any double.
std::string format_number(double v);

ScanPlan make_scan_plan(const Config& cfg, std::size_t workers);
BasinPlan make_basin_plan(const Config& cfg, std::size_t workers);

}  // namespace eemit
