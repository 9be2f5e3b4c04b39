#pragma once

// Mean-field model of two coupled spins: spin 'a' (undriven, system) and
// spin 'b' (driven ancilla, described in the rotating frame of the drive).
//
// Component order of the expanded state and of every 6x6 matrix:
//   (P_a+, P_a-, P_az, P_b+, P_b-, P_bz)
// The ancilla block uses (P_az, P_b+, P_b-, P_bz).

#include <complex>

#include <Eigen/Dense>

namespace hhdr {

using cplx = std::complex<double>;
using Vec6c = Eigen::Matrix<cplx, 6, 1>;
using Mat6c = Eigen::Matrix<cplx, 6, 6>;

enum class UnitsMode { normalized, absolute };

struct SpinParams {
  double omega0 = 0.0;  // Larmor angular frequency
  double gamma1 = 0.0;  // longitudinal relaxation rate
  double gamma2 = 0.0;  // transverse relaxation rate
  double pz_eq = 0.0;   // equilibrium polarization

  bool operator==(const SpinParams&) const = default;
};

struct DriveParams {
  double omega_b1 = 0.0;  // drive amplitude
  double delta_b = 0.0;   // signed detuning, drive minus Larmor of spin 'b'

  bool operator==(const DriveParams&) const = default;
};

struct SystemParams {
  SpinParams spin_a;
  SpinParams spin_b;
  DriveParams drive;
  double g = 0.0;
  UnitsMode units = UnitsMode::normalized;

  /// Drive angular frequency omega_b0 + delta_b.
  double omega_p() const { return spin_b.omega0 + drive.delta_b; }

  /// Throws InvalidInput naming the offending field.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

/// Returns the parameters expressed in units of omega_a0 (so that
/// spin_a.omega0 == 1 exactly). Normalized input is returned unchanged.
SystemParams normalized(const SystemParams& p);

/// Parameters of the reference color map: g = 1, gamma_a1 = 1e-2,
/// gamma_a2 = 1e-4, gamma_b1 = 3.7e-3, gamma_b2 = 3.7e-2, P_az,s = -5e-4,
/// P_bz,s = -1, all in units of omega_a0.
SystemParams reference_params(double delta_b = 0.714, double omega_b1 = 0.35);

/// Canonical reduced state: two complex transverse and two real
/// longitudinal components. P_- = conj(P_+) is implied.
struct BlochState {
  cplx pa_plus{0.0, 0.0};
  double pa_z = 0.0;
  cplx pb_plus{0.0, 0.0};
  double pb_z = 0.0;

  bool operator==(const BlochState&) const = default;
};

Vec6c expand_state(const BlochState& s);

/// Inverse of expand_state. Throws InvalidInput when the conjugate-pair
/// relations (or reality of the z components) are violated by more than
/// `tol` in absolute value.
BlochState reduce_state(const Vec6c& full, double tol = 1e-9);

/// The mean-field functions Theta(P) in expanded form; dP/dt = -Theta(P)
/// with the noise forcing set to zero.
Vec6c theta(const BlochState& s, const SystemParams& p);

/// dP/dt = -Theta(P). Rejects non-finite state components.
Vec6c theta_rhs(const BlochState& s, const SystemParams& p);

struct JacobianBlocks {
  Eigen::Matrix2cd jx;
  Eigen::Matrix4cd jy;
  Eigen::Matrix<cplx, 2, 4> vxy;
  Eigen::Matrix<cplx, 4, 2> vyx;
  double g = 0.0;
};

/// Linearization dTheta/dP at `fixed_point`, split into system (P_a+-) and
/// ancilla (P_az, P_b+, P_b-, P_bz) blocks. V_xy and V_yx are the coupling
/// blocks without the factor g.
///
/// At states with P_a+ = 0 (the zeroth-order fixed point) jy is exactly the
/// drive-only ancilla matrix. Away from it jy also carries the
/// g * (P_a+ -+ P_a-) entries so that the assembled matrix is the exact
/// Jacobian at any state.
JacobianBlocks jacobian_blocks(const SystemParams& p, const BlochState& fixed_point);

/// [[jx, g*vxy], [g*vyx, jy]]
Mat6c assemble_full_jacobian(const JacobianBlocks& b);

}  // namespace hhdr
