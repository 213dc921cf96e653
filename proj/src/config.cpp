#include "eemit/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

namespace eemit {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

double parse_double(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(kExitParse, "key '" + std::string(key) + "': '" + std::string(text) + "' is not a number");
  }
  return v;
}

std::int64_t parse_count(std::string_view key, std::string_view text) {
  const double v = parse_double(key, text);
  if (!std::isfinite(v) || v != std::floor(v) || std::abs(v) > 9e15) {
    throw ConfigError(kExitValidation, "key '" + std::string(key) + "' must be an integer");
  }
  return static_cast<std::int64_t>(v);
}

std::size_t parse_size(std::string_view key, std::string_view text) {
  const auto v = parse_count(key, text);
  if (v < 0) throw ConfigError(kExitValidation, "key '" + std::string(key) + "' must be non-negative");
  return static_cast<std::size_t>(v);
}

State parse_state(std::string_view key, std::string_view text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) {
    throw ConfigError(kExitParse, "key '" + std::string(key) + "': expected 'x,y', got '" + std::string(text) + "'");
  }
  return {parse_double(key, parts[0]), parse_double(key, parts[1])};
}

using Setter = std::function<void(Config&, std::string_view key, std::string_view value)>;

Axis& ensure_axis(std::optional<Axis>& axis) {
  if (!axis) axis = Axis{.parameter = "", .lo = 0.0, .hi = 0.0, .points = 21};
  return *axis;
}

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = [] {
    std::map<std::string, Setter, std::less<>> t;
    for (auto name : kParameterNames) {
      t.emplace(std::string(name), [name](Config& c, std::string_view key, std::string_view v) {
        *parameter_ref(c.spec, name) = parse_double(key, v);
      });
    }
    t.emplace("x0", [](Config& c, auto key, auto v) { c.sim.ic.x = parse_double(key, v); });
    t.emplace("y0", [](Config& c, auto key, auto v) { c.sim.ic.y = parse_double(key, v); });
    t.emplace("dt", [](Config& c, auto key, auto v) { c.sim.dt = parse_double(key, v); });
    t.emplace("t0", [](Config& c, auto key, auto v) { c.sim.t0 = parse_double(key, v); });
    t.emplace("transient_steps", [](Config& c, auto key, auto v) { c.sim.transient_steps = parse_count(key, v); });
    t.emplace("record_steps", [](Config& c, auto key, auto v) {
      c.sim.record_steps = parse_count(key, v);
      c.record_steps_given = true;
    });
    t.emplace("sample_every", [](Config& c, auto key, auto v) { c.sim.sample_every = parse_count(key, v); });
    t.emplace("observable", [](Config& c, auto, auto v) {
      auto obs = parse_observable(v);
      if (!obs) throw ConfigError(kExitValidation, "observable must be 'x' or 'y', got '" + std::string(v) + "'");
      c.sim.observable = *obs;
    });
    t.emplace("strobe_period", [](Config& c, auto key, auto v) { c.sim.strobe_period = parse_double(key, v); });
    t.emplace("n", [](Config& c, auto key, auto v) { c.n = parse_double(key, v); });
    t.emplace("bins", [](Config& c, auto key, auto v) { c.bins = parse_size(key, v); });
    for (int which : {1, 2}) {
      const std::string prefix = "axis" + std::to_string(which);
      auto pick = [which](Config& c) -> Axis& { return ensure_axis(which == 1 ? c.axis1 : c.axis2); };
      t.emplace(prefix, [pick](Config& c, auto, auto v) { pick(c).parameter = std::string(v); });
      t.emplace(prefix + "_lo", [pick](Config& c, auto key, auto v) { pick(c).lo = parse_double(key, v); });
      t.emplace(prefix + "_hi", [pick](Config& c, auto key, auto v) { pick(c).hi = parse_double(key, v); });
      t.emplace(prefix + "_points", [pick](Config& c, auto key, auto v) { pick(c).points = parse_size(key, v); });
    }
    t.emplace("ics", [](Config& c, auto key, auto v) {
      c.ics.clear();
      for (auto part : split(v, ';')) {
        if (!part.empty()) c.ics.push_back(parse_state(key, part));
      }
    });
    t.emplace("collect", [](Config& c, auto, auto v) {
      c.collect = CollectFlags{false, false, false, false};
      for (auto flag : split(v, ',')) {
        if (flag == "probability") c.collect.probability = true;
        else if (flag == "d_max") c.collect.d_max = true;
        else if (flag == "bif_maxima") c.collect.bif_maxima = true;
        else if (flag == "mle") c.collect.mle = true;
        else if (!flag.empty()) throw ConfigError(kExitValidation, "unknown collect flag '" + std::string(flag) + "'");
      }
    });
    t.emplace("bif_cap", [](Config& c, auto key, auto v) { c.bif_cap = parse_size(key, v); });
    t.emplace("mle_transient_steps", [](Config& c, auto key, auto v) { c.mle.transient_steps = parse_count(key, v); });
    t.emplace("mle_total_steps", [](Config& c, auto key, auto v) { c.mle.total_steps = parse_count(key, v); });
    t.emplace("mle_renorm_every", [](Config& c, auto key, auto v) { c.mle.renorm_every = parse_count(key, v); });
    t.emplace("mle_seed", [](Config& c, auto key, auto v) { c.mle.seed_tangent = parse_state(key, v); });
    t.emplace("basin_x_lo", [](Config& c, auto key, auto v) { c.basin.x_lo = parse_double(key, v); });
    t.emplace("basin_x_hi", [](Config& c, auto key, auto v) { c.basin.x_hi = parse_double(key, v); });
    t.emplace("basin_y_lo", [](Config& c, auto key, auto v) { c.basin.y_lo = parse_double(key, v); });
    t.emplace("basin_y_hi", [](Config& c, auto key, auto v) { c.basin.y_hi = parse_double(key, v); });
    t.emplace("basin_nx", [](Config& c, auto key, auto v) { c.basin.nx = parse_size(key, v); });
    t.emplace("basin_ny", [](Config& c, auto key, auto v) { c.basin.ny = parse_size(key, v); });
    t.emplace("basin_transient_steps",
              [](Config& c, auto key, auto v) { c.basin.classifier.mle.transient_steps = parse_count(key, v); });
    t.emplace("basin_total_steps",
              [](Config& c, auto key, auto v) { c.basin.classifier.mle.total_steps = parse_count(key, v); });
    t.emplace("chaos_threshold",
              [](Config& c, auto key, auto v) { c.basin.classifier.chaos_threshold = parse_double(key, v); });
    t.emplace("strobe_samples",
              [](Config& c, auto key, auto v) { c.basin.classifier.strobe_samples = parse_size(key, v); });
    t.emplace("strobe_tolerance",
              [](Config& c, auto key, auto v) { c.basin.classifier.strobe_tolerance = parse_double(key, v); });
    t.emplace("max_periodic_points",
              [](Config& c, auto key, auto v) { c.basin.classifier.max_periodic_points = parse_size(key, v); });
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<std::string_view>& known_keys() {
  static const std::vector<std::string_view> keys = [] {
    std::vector<std::string_view> k{"kind"};
    for (const auto& [name, _] : setters()) k.push_back(name);
    return k;
  }();
  return keys;
}

KeyValues parse_key_values(std::string_view text) {
  KeyValues pairs;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = trim(line.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(kExitParse, "line " + std::to_string(line_no) + ": expected key=value, got '" +
                                        std::string(line) + "'");
    }
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(kExitParse, "line " + std::to_string(line_no) + ": empty key");
    pairs.emplace_back(std::string(key), std::string(value));
  }
  if (pairs.empty()) throw ConfigError(kExitParse, "configuration is empty");
  return pairs;
}

std::pair<std::string, std::string> parse_override(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos || trim(text.substr(0, eq)).empty()) {
    throw ConfigError(kExitParse, "override '" + std::string(text) + "' is not key=value");
  }
  return {std::string(trim(text.substr(0, eq))), std::string(trim(text.substr(eq + 1)))};
}

Config build_config(const KeyValues& pairs) {
  std::vector<std::string> unknown;
  for (const auto& [key, _] : pairs) {
    if (key != "kind" && !setters().contains(key) &&
        std::find(unknown.begin(), unknown.end(), key) == unknown.end()) {
      unknown.push_back(key);
    }
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
    throw ConfigError(kExitValidation, "unknown key(s): " + list);
  }

  std::optional<SystemKind> kind;
  for (const auto& [key, value] : pairs) {
    if (key != "kind") continue;
    kind = parse_system_kind(value);
    if (!kind) throw ConfigError(kExitValidation, "unknown kind '" + value + "'");
  }
  if (!kind) throw ConfigError(kExitValidation, "missing required key 'kind'");

  Config c;
  c.spec.kind = *kind;
  c.sim.ic = default_initial_condition(*kind);
  c.sim.transient_steps = default_transient_steps(*kind);
  c.sim.record_steps = kDefaultRecordSteps;
  c.sim.observable = default_observable(*kind);
  c.n = is_lienard(*kind) ? 8.0 : 4.0;

  bool ics_given = false;
  for (const auto& [key, value] : pairs) {
    if (key == "kind") continue;
    setters().find(key)->second(c, key, value);
    if (key == "ics") ics_given = true;
  }
  if (!ics_given) c.ics = {c.sim.ic};
  c.basin.spec = c.spec;
  c.basin.classifier.mle.dt = c.sim.dt;
  c.mle.dt = c.sim.dt;

  if (auto err = validate(c.spec)) throw ConfigError(kExitValidation, *err);
  if (auto err = validate(c.sim)) throw ConfigError(kExitValidation, *err);
  if (!(c.n > 0.0) || !std::isfinite(c.n)) throw ConfigError(kExitValidation, "n must be positive");
  if (c.bins < 1) throw ConfigError(kExitValidation, "bins must be >= 1");
  if (c.ics.empty()) throw ConfigError(kExitValidation, "ics must list at least one initial condition");
  for (const auto* axis : {&c.axis1, &c.axis2}) {
    if (*axis && (*axis)->parameter.empty()) throw ConfigError(kExitValidation, "axis bounds given without a parameter");
  }
  if (c.axis2 && !c.axis1) throw ConfigError(kExitValidation, "axis2 given without axis1");
  if (auto err = validate(c.mle)) throw ConfigError(kExitValidation, "mle: " + *err);
  return c;
}

Config parse_config(std::string_view text, const KeyValues& overrides) {
  KeyValues pairs = parse_key_values(text);
  pairs.insert(pairs.end(), overrides.begin(), overrides.end());
  return build_config(pairs);
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string serialize(const SystemSpec& spec) {
  std::string out = "kind=" + std::string(to_string(spec.kind)) + "\n";
  for (auto name : kParameterNames) {
    if (uses_parameter(spec.kind, name)) out += std::string(name) + "=" + format_number(*parameter_value(spec, name)) + "\n";
  }
  return out;
}

ScanPlan make_scan_plan(const Config& cfg, std::size_t workers) {
  if (!cfg.axis1) throw ConfigError(kExitValidation, "scan requires axis1");
  ScanPlan plan;
  plan.spec = cfg.spec;
  plan.axis1 = *cfg.axis1;
  plan.axis2 = cfg.axis2;
  plan.sim = cfg.sim;
  if (!cfg.record_steps_given) plan.sim.record_steps = kDefaultScanRecordSteps;
  plan.n = cfg.n;
  plan.ics = cfg.ics;
  plan.collect = cfg.collect;
  plan.bif_cap = cfg.bif_cap;
  plan.mle = cfg.mle;
  plan.workers = workers;
  if (auto err = validate(plan)) throw ConfigError(kExitValidation, *err);
  return plan;
}

BasinPlan make_basin_plan(const Config& cfg, std::size_t workers) {
  BasinPlan plan = cfg.basin;
  plan.spec = cfg.spec;
  plan.workers = workers;
  if (auto err = validate(plan)) throw ConfigError(kExitValidation, *err);
  return plan;
}

}  // namespace eemit
