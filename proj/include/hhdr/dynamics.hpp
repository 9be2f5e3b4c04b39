#pragma once

// Time-domain integration of the nonlinear mean-field equations and
// self-excited-oscillation (SEO) detection. Times are in units of
// 1/omega_a0; parameters are normalized on entry.

#include <cstddef>
#include <optional>
#include <vector>

#include "hhdr/core_model.hpp"
#include "hhdr/errors.hpp"

namespace hhdr {

struct IntegrationSpec {
  double t_end = 0.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  std::size_t max_steps = 100'000'000;
  /// When empty: zeroth-order fixed point with P_a+ shifted by seed_amplitude.
  std::optional<BlochState> initial_state;
  double seed_amplitude = 1e-6;
  /// Keep every record_stride-th accepted step.
  int record_stride = 1;
  /// Nothing before this time is recorded (the final state always is).
  double record_start = 0.0;

  void validate() const;
};

/// t_end = 40 / gamma_a2 (normalized), other fields at their defaults.
IntegrationSpec default_integration(const SystemParams& p);

/// Initial state used when IntegrationSpec::initial_state is empty.
BlochState seeded_initial_state(const SystemParams& p, double seed_amplitude);

struct Trajectory {
  std::vector<double> times;
  std::vector<BlochState> states;
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  /// Largest |P_az| and |P_bz| over every accepted step (not only recorded).
  double max_abs_pz = 0.0;
};

/// Thrown when the step budget runs out; carries what was integrated.
class TruncationError : public Error {
 public:
  TruncationError(const std::string& what, Trajectory partial)
      : Error(what), partial_(std::move(partial)) {}
  const Trajectory& partial() const { return partial_; }

 private:
  Trajectory partial_;
};

/// Real-form right-hand side on (Re P_a+, Im P_a+, P_az, Re P_b+, Im P_b+, P_bz).
void mean_field_rhs(const SystemParams& p, const double* y, double* dydt);

/// Adaptive Dormand-Prince 5(4) integration from t = 0 to spec.t_end with
/// mixed absolute/relative error control.
Trajectory integrate(const SystemParams& p, const IntegrationSpec& spec);

struct SeoEstimate {
  /// sqrt(2) * time-weighted RMS of mean-removed Re(P_a+) over the tail.
  double amplitude = 0.0;
  bool oscillating = false;
  /// 10 * g |P_az0 P_bz0| / omega_a0 at the zeroth-order fixed point: ten
  /// times the static transverse offset of spin 'a' set up by the driven
  /// ancilla.
  double threshold = 0.0;
  /// 10 * g |P_az,s P_bz,s| / omega_a0, the same scale with spin 'b' at
  /// equilibrium. Equals `threshold` when omega_b1 = 0.
  double threshold_undriven = 0.0;
  /// (max - min) / mean of the amplitude over 10 equal sub-windows of the tail.
  double envelope_drift = 0.0;
  std::size_t samples = 0;
};

/// Requires >= 100 samples spanning >= 20 periods of omega_a0 in the tail
/// window [t_end - tail_fraction*(t_end - t_start), t_end]; throws
/// PreconditionError otherwise.
SeoEstimate seo_amplitude(const Trajectory& traj, const SystemParams& p, double tail_fraction = 0.2);

}  // namespace hhdr
