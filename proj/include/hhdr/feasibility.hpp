#pragma once

// Order-of-magnitude estimates for an NV- / P1 spin pair in diamond.
// All rates are angular frequencies in rad/s, distances in meters.

#include <numbers>
#include <optional>

#include "hhdr/core_model.hpp"

namespace hhdr {

struct PhysicalConstants {
  static constexpr double hbar = 1.054571817e-34;
  static constexpr double k_b = 1.380649e-23;
  static constexpr double gamma_e = 2.0 * std::numbers::pi * 28.03e9;
  static constexpr double a_d = 3.57e-10;
  /// g / 2pi at r = a_d.
  static constexpr double dipolar_prefactor_hz = 3.6e9;
};

/// kappa = g^2 gamma_b1 / (gamma_a2 gamma_b2^2).
double cooperativity(double g, double gamma_a2, double gamma_b1, double gamma_b2);

/// g(r) = 2pi * 3.6 GHz * (r / a_d)^-3.
double dipolar_coupling(double r);

/// Coupling at which kappa |p_a p_b| = 1.
double required_coupling(double gamma_a2, double gamma_b1, double gamma_b2, double p_a, double p_b);

/// Distance at which dipolar_coupling reaches required_coupling.
double threshold_distance(double gamma_a2, double gamma_b1, double gamma_b2, double p_a, double p_b);

/// -tanh(hbar omega0 / 2 k_B T).
double thermal_polarization(double omega0, double temperature);

/// hbar g / k_B.
double critical_temperature(double g);

struct PresetOverrides {
  std::optional<double> omega_a0;
  std::optional<double> gamma_a1;
  std::optional<double> gamma_a2;
  std::optional<double> gamma_b1;
  std::optional<double> gamma_b2;
  /// Optically induced polarization of spin 'a' (replaces the thermal value).
  std::optional<double> pz_a;
  std::optional<double> pz_b;
  std::optional<double> distance;
  std::optional<double> omega_b1;
  std::optional<double> delta_b;
};

/// Absolute-units parameters: omega_a0 = 2pi 50 MHz, gamma_a2 = gamma_b2 =
/// 2pi 0.1 MHz, gamma_a1 = gamma_b1 = 2pi 0.01 MHz, omega_b0 = gamma_e B,
/// thermal polarizations at `temperature`, g from an 8 nm separation, and a
/// drive on the blue Hartmann-Hahn branch (omega_b1 = 0.35 omega_a0).
SystemParams nv_p1_preset(double b_field, double temperature, const PresetOverrides& overrides = {});

struct FeasibilityReport {
  double kappa = 0.0;
  double g_required = 0.0;
  double r_threshold = 0.0;
  double t_critical = 0.0;
  double p_a = 0.0;
  double p_b = 0.0;
  double g = 0.0;
  double omega_b0 = 0.0;
};

/// Estimates for absolute-units parameters.
FeasibilityReport feasibility_report(const SystemParams& p);

}  // namespace hhdr
