#pragma once

// Single driven spin in the frame rotating with the drive, and the
// zeroth-order / refined fixed point of the coupled two-spin model.

#include <utility>

#include <Eigen/Dense>

#include "hhdr/core_model.hpp"

namespace hhdr {

/// Detuning convention: delta = drive frequency - Larmor frequency, the same
/// convention as DriveParams::delta_b, so that spin 'b' is the special case
/// {gamma_b1, gamma_b2, delta_b, omega_b1, P_bz,s}.
struct SingleSpinDrive {
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double delta = 0.0;
  double omega1 = 0.0;
  double pz_eq = 0.0;
};

struct SteadyState3 {
  cplx p_plus{0.0, 0.0};
  cplx p_minus{0.0, 0.0};
  double p_z = 0.0;
};

/// Constant-coefficient matrix J of dP/dt + J P = (0, 0, gamma1*P_z,s) in
/// the row order (P_+, P_-, P_z).
Eigen::Matrix3cd single_spin_matrix(const SingleSpinDrive& d);

/// Closed-form solution of J P0 = (0, 0, gamma1*P_z,s).
SteadyState3 single_spin_steady_state(const SingleSpinDrive& d);

/// Spin 'b' of `p` as a single driven spin.
SingleSpinDrive ancilla_drive(const SystemParams& p);

enum class FixedPointMode { zeroth_order, newton };

/// zeroth_order: P_a+ = 0, P_az = P_az,s, spin 'b' at its driven steady
/// state. newton: the zeroth-order point refined by Newton iteration on
/// Theta using the analytic Jacobian, converged to |Theta| <= 1e-12
/// (normalized units). Throws NonConvergence after 50 iterations.
BlochState coupled_fixed_point(const SystemParams& p,
                               FixedPointMode mode = FixedPointMode::zeroth_order);

/// Lab-frame transverse components of a spin whose rotating-frame
/// amplitude is p_plus: P_x + i P_y = 2 p_plus e^{i omega t}.
std::pair<double, double> lab_frame_transverse(cplx p_plus, double omega, double t);

/// Inverse of lab_frame_transverse.
cplx rotating_frame_transverse(double px, double py, double omega, double t);

}  // namespace hhdr
