#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace eemit {

/// Model variant selector.
///
///  - L1, L2: Lienard oscillator, ydot = -a x y + g x - b x^3 + forcing (cos drive)
///  - LM:     Lienard multistability form, ydot = -a x y - g x - b x^3 + forcing (sin drive, no phase)
///  - NP1, NP2: particle on a rotating parabola, numerator over (1 + lambda x^2)
///  - NP3:    NP2 with a parametrically modulated rotation rate
enum class SystemKind { L1, L2, LM, NP1, NP2, NP3 };

std::string_view to_string(SystemKind kind);
std::optional<SystemKind> parse_system_kind(std::string_view name);

bool is_lienard(SystemKind kind);
bool is_non_polynomial(SystemKind kind);

struct State {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

using Jacobian = std::array<std::array<double, 2>, 2>;

/// All scalar parameters of every model variant. Fields that the selected
/// kind does not use are kept at exactly zero (see canonicalize()).
struct SystemSpec {
  SystemKind kind = SystemKind::L1;
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double lambda = 0.0;
  double omega0_sq = 0.0;
  double Omega0_sq = 0.0;
  double epsilon = 0.0;
  double omega_p = 0.0;
  double f1 = 0.0;
  double omega1 = 0.0;
  double f2 = 0.0;
  double omega2 = 0.0;
  double phi = 0.0;
  double A = 0.0;

  friend bool operator==(const SystemSpec&, const SystemSpec&) = default;
};

/// Names of the scalar fields, in serialization order.
inline constexpr std::array<std::string_view, 14> kParameterNames = {
    "alpha", "beta",  "gamma",  "lambda", "omega0_sq", "Omega0_sq", "epsilon",
    "omega_p", "f1",  "omega1", "f2",     "omega2",    "phi",       "A"};

/// Pointer to the named field, or nullptr for an unknown name.
double* parameter_ref(SystemSpec& spec, std::string_view name);
std::optional<double> parameter_value(const SystemSpec& spec, std::string_view name);

/// Whether `kind` reads the named parameter.
bool uses_parameter(SystemKind kind, std::string_view name);

/// Returns a copy with every field unused by `spec.kind` set to zero.
SystemSpec canonicalize(SystemSpec spec);
bool is_canonical(const SystemSpec& spec);

/// Empty when the spec is usable, otherwise a description of the problem.
std::optional<std::string> validate(const SystemSpec& spec);

/// Time derivative (xdot, ydot). xdot is always s.y.
State vector_field(const SystemSpec& spec, const State& s, double t);

/// d(xdot, ydot)/d(x, y), evaluated analytically.
Jacobian jacobian(const SystemSpec& spec, const State& s, double t);

}  // namespace eemit
