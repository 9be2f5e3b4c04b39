#pragma once

// Back-action of the driven ancilla on spin 'a': ancilla susceptibility,
// complex frequency shift Upsilon_a, damping coefficient alpha_a, and the
// eigenvalue analysis of the full linearization.
//
// Every function here first converts its parameters to normalized units
// (omega_a0 = 1). Frequencies passed in (omega) and rates returned
// (Upsilon_a, eigenvalues) are in units of omega_a0.
//
// Sign convention. Fluctuations obey dP'/dt = -J P', so under the Fourier
// convention d/dt -> -i omega the response is (J - i omega)^{-1}. The
// P_a- channel (diagonal entry gamma_a2 + i omega_a0 of J_x) is the one that
// resonates at +omega_a0, hence Upsilon_a is the (2,2) entry of
// g^2 V_xy chi_y(omega_a0) V_yx. The (1,1) entry at +omega_a0 equals the
// (2,2) entry at mirrored detuning -delta_b; it is available as
// UpsilonChannel::as_printed for comparison.

#include <vector>

#include <Eigen/Dense>

#include "hhdr/bloch_steady.hpp"
#include "hhdr/core_model.hpp"

namespace hhdr {

/// D_0..D_3 and D_L of the ancilla block evaluated at angular frequency
/// omega, eta = D_L / (omega^2 gamma_b1), and the Rabi frequency.
struct DenominatorSet {
  cplx d0, d1, d2, d3;
  cplx d_l;
  cplx eta;
  double omega_r = 0.0;
};

DenominatorSet denominators(const SystemParams& p, double omega);

enum class ChiMethod { closed, numeric };

/// chi_y(omega) = (J_y - i omega)^{-1} at the zeroth-order fixed point.
/// Throws DegeneracyError when |det(J_y - i omega)| <= 1e-300.
Eigen::Matrix4cd chi_y(const SystemParams& p, double omega, ChiMethod method = ChiMethod::closed);

/// V_xy chi_y(omega) V_yx (2x2, without g^2), by numeric inversion. With
/// include_d0_term = false the P_az path (the 1/D_0 entry of chi_y) is
/// removed.
Eigen::Matrix2cd feedback_kernel(const SystemParams& p, double omega, bool include_d0_term = true);

enum class UpsilonMethod {
  matrix,      // g^2 (V_xy chi_y V_yx) entry, numeric inversion
  closed,      // closed form in D_0, D_1, D_2, D_L and the steady state
  normalized,  // closed form in eta and the equilibrium polarizations
};

enum class UpsilonChannel { resonant, as_printed };

/// Complex frequency shift of spin 'a' at omega = omega_a0. The effective
/// transverse damping rate is gamma_a2 - Re(Upsilon_a).
///
/// The normalized method evaluates the Hartmann-Hahn term through eta; when
/// include_d0_term is set it adds -2 g^2 P_bz0^2 / D_0 computed directly.
/// Throws DegeneracyError when D_L (or J_y - i omega_a0) is singular.
cplx upsilon_a(const SystemParams& p, UpsilonMethod method = UpsilonMethod::matrix,
               bool include_d0_term = true,
               UpsilonChannel channel = UpsilonChannel::resonant);

/// The P_bz0^2 term in the printed normalized form:
/// (2 g^2 / omega_a0) (1 + x) (gamma_a1/omega_a0 - i) P_bz,s^2 /
/// (den^2 (1 + gamma_a1^2/omega_a0^2)), x = delta_b^2/gamma_b2^2.
/// Kept for comparison with -2 g^2 P_bz0^2 / D_0; the two differ in the sign
/// of the real part and in the power of (1 + x).
cplx upsilon_d0_term_as_printed(const SystemParams& p);

/// alpha_a = -Re(Upsilon_a) / gamma_a2 with the matrix method. alpha_a < -1
/// means net negative damping of spin 'a'.
double alpha_a(const SystemParams& p, bool include_d0_term = true);

struct RabiMatching {
  double omega_r = 0.0;
  double hh_mismatch = 0.0;
  /// Detunings solving omega_R = omega_a0 at this drive amplitude, ascending.
  /// Empty when omega_b1 > omega_a0 / 2.
  std::vector<double> matching_detunings;
};

RabiMatching rabi_and_matching(double omega_a0, double omega_b1, double delta_b);

struct EigenReport {
  Eigen::Matrix<cplx, 6, 1> eigenvalues;
  double min_real = 0.0;
  /// Some eigenvalue of J has negative real part (dP'/dt = -J P').
  bool unstable = false;
};

EigenReport full_eigenvalues(const SystemParams& p,
                             FixedPointMode mode = FixedPointMode::zeroth_order);

struct StabilityPoint {
  cplx upsilon;
  double alpha = 0.0;
  Eigen::Matrix<cplx, 6, 1> eigenvalues;
  double hh_mismatch = 0.0;
  bool unstable = false;  // alpha < -1
  DenominatorSet denominators;
};

StabilityPoint stability_point(const SystemParams& p, bool include_d0_term = true);

}  // namespace hhdr
