#include "eemit/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace eemit {

namespace {

constexpr std::array<std::string_view, 6> kKindNames = {"L1", "L2", "LM", "NP1", "NP2", "NP3"};

// Time-dependent additive drive shared by every kind.
double external_drive(const SystemSpec& p, double t) {
  switch (p.kind) {
    case SystemKind::L1:
    case SystemKind::NP1:
      return p.f1 * std::cos(p.omega1 * t) + p.A;
    case SystemKind::LM:
      return p.f1 * std::sin(p.omega1 * t) + p.f2 * std::sin(p.omega2 * t) + p.A;
    default:
      return p.f1 * std::cos(p.omega1 * t) + p.f2 * std::cos(p.omega2 * t + p.phi) + p.A;
  }
}

// Coefficient of x contributed by the parametric modulation of the rotation rate.
double parametric_stiffness(const SystemSpec& p, double t) {
  if (p.kind != SystemKind::NP3) return 0.0;
  const double wt = p.omega_p * t;
  return p.Omega0_sq *
         (2.0 * p.epsilon * std::cos(wt) + 0.5 * p.epsilon * p.epsilon * (1.0 + std::cos(2.0 * wt)));
}

}  // namespace

std::string_view to_string(SystemKind kind) { return kKindNames[static_cast<std::size_t>(kind)]; }

std::optional<SystemKind> parse_system_kind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == name) return static_cast<SystemKind>(i);
  }
  return std::nullopt;
}

bool is_lienard(SystemKind kind) {
  return kind == SystemKind::L1 || kind == SystemKind::L2 || kind == SystemKind::LM;
}

bool is_non_polynomial(SystemKind kind) { return !is_lienard(kind); }

double* parameter_ref(SystemSpec& spec, std::string_view name) {
  if (name == "alpha") return &spec.alpha;
  if (name == "beta") return &spec.beta;
  if (name == "gamma") return &spec.gamma;
  if (name == "lambda") return &spec.lambda;
  if (name == "omega0_sq") return &spec.omega0_sq;
  if (name == "Omega0_sq") return &spec.Omega0_sq;
  if (name == "epsilon") return &spec.epsilon;
  if (name == "omega_p") return &spec.omega_p;
  if (name == "f1") return &spec.f1;
  if (name == "omega1") return &spec.omega1;
  if (name == "f2") return &spec.f2;
  if (name == "omega2") return &spec.omega2;
  if (name == "phi") return &spec.phi;
  if (name == "A") return &spec.A;
  return nullptr;
}

std::optional<double> parameter_value(const SystemSpec& spec, std::string_view name) {
  auto copy = spec;
  if (const double* p = parameter_ref(copy, name)) return *p;
  return std::nullopt;
}

bool uses_parameter(SystemKind kind, std::string_view name) {
  if (name == "alpha" || name == "f1" || name == "omega1" || name == "A") return true;
  if (name == "beta" || name == "gamma") return is_lienard(kind);
  if (name == "lambda" || name == "omega0_sq") return is_non_polynomial(kind);
  if (name == "Omega0_sq" || name == "epsilon" || name == "omega_p") return kind == SystemKind::NP3;
  if (name == "f2" || name == "omega2") return kind != SystemKind::L1 && kind != SystemKind::NP1;
  if (name == "phi") return kind == SystemKind::L2 || kind == SystemKind::NP2 || kind == SystemKind::NP3;
  return false;
}

SystemSpec canonicalize(SystemSpec spec) {
  for (auto name : kParameterNames) {
    if (!uses_parameter(spec.kind, name)) *parameter_ref(spec, name) = 0.0;
  }
  return spec;
}

bool is_canonical(const SystemSpec& spec) { return canonicalize(spec) == spec; }

std::optional<std::string> validate(const SystemSpec& spec) {
  for (auto name : kParameterNames) {
    if (!std::isfinite(*parameter_value(spec, name))) {
      return "parameter '" + std::string(name) + "' is not finite";
    }
  }
  if (is_non_polynomial(spec.kind) && spec.lambda < 0.0) {
    return "lambda must be non-negative for non-polynomial kinds";
  }
  if (!is_canonical(spec)) {
    for (auto name : kParameterNames) {
      if (!uses_parameter(spec.kind, name) && *parameter_value(spec, name) != 0.0) {
        return "parameter '" + std::string(name) + "' is not used by kind " +
               std::string(to_string(spec.kind));
      }
    }
  }
  return std::nullopt;
}

State vector_field(const SystemSpec& p, const State& s, double t) {
  const double x = s.x;
  const double y = s.y;
  switch (p.kind) {
    case SystemKind::L1:
    case SystemKind::L2:
      return {y, -p.alpha * x * y + p.gamma * x - p.beta * x * x * x + external_drive(p, t)};
    case SystemKind::LM:
      return {y, -p.alpha * x * y - p.gamma * x - p.beta * x * x * x + external_drive(p, t)};
    case SystemKind::NP1:
    case SystemKind::NP2:
    case SystemKind::NP3: {
      const double numerator = -p.alpha * y - p.lambda * x * y * y - p.omega0_sq * x +
                               parametric_stiffness(p, t) * x + external_drive(p, t);
      return {y, numerator / (1.0 + p.lambda * x * x)};
    }
  }
  return {y, 0.0};
}

Jacobian jacobian(const SystemSpec& p, const State& s, double t) {
  const double x = s.x;
  const double y = s.y;
  switch (p.kind) {
    case SystemKind::L1:
    case SystemKind::L2:
      return {{{0.0, 1.0}, {-p.alpha * y + p.gamma - 3.0 * p.beta * x * x, -p.alpha * x}}};
    case SystemKind::LM:
      return {{{0.0, 1.0}, {-p.alpha * y - p.gamma - 3.0 * p.beta * x * x, -p.alpha * x}}};
    case SystemKind::NP1:
    case SystemKind::NP2:
    case SystemKind::NP3: {
      const double stiffness = parametric_stiffness(p, t);
      const double denom = 1.0 + p.lambda * x * x;
      const double numerator = -p.alpha * y - p.lambda * x * y * y - p.omega0_sq * x +
                               stiffness * x + external_drive(p, t);
      const double dn_dx = -p.lambda * y * y - p.omega0_sq + stiffness;
      const double dn_dy = -p.alpha - 2.0 * p.lambda * x * y;
      return {{{0.0, 1.0},
               {(dn_dx * denom - numerator * 2.0 * p.lambda * x) / (denom * denom), dn_dy / denom}}};
    }
  }
  return {{{0.0, 1.0}, {0.0, 0.0}}};
}

}  // namespace eemit
