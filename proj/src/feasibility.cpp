#include "hhdr/feasibility.hpp"

#include <cmath>

#include "hhdr/errors.hpp"

namespace hhdr {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) throw InvalidInput(std::string(name) + " must be > 0");
}

}  // namespace

double cooperativity(double g, double gamma_a2, double gamma_b1, double gamma_b2) {
  require_positive(gamma_a2, "gamma_a2");
  require_positive(gamma_b1, "gamma_b1");
  require_positive(gamma_b2, "gamma_b2");
  if (!std::isfinite(g)) throw InvalidInput("g must be finite");
  return g * g * gamma_b1 / (gamma_a2 * gamma_b2 * gamma_b2);
}

double dipolar_coupling(double r) {
  require_positive(r, "distance");
  return kTwoPi * PhysicalConstants::dipolar_prefactor_hz * std::pow(r / PhysicalConstants::a_d, -3.0);
}

double required_coupling(double gamma_a2, double gamma_b1, double gamma_b2, double p_a, double p_b) {
  require_positive(gamma_a2, "gamma_a2");
  require_positive(gamma_b1, "gamma_b1");
  require_positive(gamma_b2, "gamma_b2");
  const double pp = std::abs(p_a * p_b);
  if (!(pp > 0.0)) throw InvalidInput("threshold unreachable: polarization product is zero");
  return std::sqrt(gamma_a2 * gamma_b2 * gamma_b2 / (gamma_b1 * pp));
}

double threshold_distance(double gamma_a2, double gamma_b1, double gamma_b2, double p_a, double p_b) {
  const double g = required_coupling(gamma_a2, gamma_b1, gamma_b2, p_a, p_b);
  return PhysicalConstants::a_d * std::cbrt(kTwoPi * PhysicalConstants::dipolar_prefactor_hz / g);
}

double thermal_polarization(double omega0, double temperature) {
  require_positive(temperature, "temperature");
  if (!std::isfinite(omega0)) throw InvalidInput("omega0 must be finite");
  return -std::tanh(PhysicalConstants::hbar * omega0 / (2.0 * PhysicalConstants::k_b * temperature));
}

double critical_temperature(double g) {
  require_positive(g, "g");
  return PhysicalConstants::hbar * g / PhysicalConstants::k_b;
}

SystemParams nv_p1_preset(double b_field, double temperature, const PresetOverrides& o) {
  if (!(b_field > 0.0 && b_field <= 1.0)) throw InvalidInput("b_field must lie in (0, 1] T");
  require_positive(temperature, "temperature");

  SystemParams p;
  p.units = UnitsMode::absolute;
  p.spin_a.omega0 = o.omega_a0.value_or(kTwoPi * 50e6);
  p.spin_a.gamma1 = o.gamma_a1.value_or(kTwoPi * 0.01e6);
  p.spin_a.gamma2 = o.gamma_a2.value_or(kTwoPi * 0.1e6);
  p.spin_a.pz_eq = o.pz_a.value_or(thermal_polarization(p.spin_a.omega0, temperature));

  p.spin_b.omega0 = PhysicalConstants::gamma_e * b_field;
  p.spin_b.gamma1 = o.gamma_b1.value_or(kTwoPi * 0.01e6);
  p.spin_b.gamma2 = o.gamma_b2.value_or(kTwoPi * 0.1e6);
  p.spin_b.pz_eq = o.pz_b.value_or(thermal_polarization(p.spin_b.omega0, temperature));

  p.g = dipolar_coupling(o.distance.value_or(8e-9));
  p.drive.omega_b1 = o.omega_b1.value_or(0.35 * p.spin_a.omega0);
  if (o.delta_b) {
    p.drive.delta_b = *o.delta_b;
  } else {
    const double disc = p.spin_a.omega0 * p.spin_a.omega0 - 4.0 * p.drive.omega_b1 * p.drive.omega_b1;
    p.drive.delta_b = disc > 0.0 ? std::sqrt(disc) : 0.0;
  }
  p.validate();
  return p;
}

FeasibilityReport feasibility_report(const SystemParams& p) {
  p.validate();
  if (p.units != UnitsMode::absolute) throw InvalidInput("feasibility estimates need absolute units");
  FeasibilityReport r;
  r.g = p.g;
  r.p_a = p.spin_a.pz_eq;
  r.p_b = p.spin_b.pz_eq;
  r.omega_b0 = p.spin_b.omega0;
  r.kappa = cooperativity(p.g, p.spin_a.gamma2, p.spin_b.gamma1, p.spin_b.gamma2);
  r.g_required = required_coupling(p.spin_a.gamma2, p.spin_b.gamma1, p.spin_b.gamma2, r.p_a, r.p_b);
  r.r_threshold = threshold_distance(p.spin_a.gamma2, p.spin_b.gamma1, p.spin_b.gamma2, r.p_a, r.p_b);
  r.t_critical = critical_temperature(p.g);
  return r;
}

}  // namespace hhdr
