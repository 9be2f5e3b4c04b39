#include "hhdr/bloch_steady.hpp"

#include <cmath>

#include "hhdr/errors.hpp"

namespace hhdr {

namespace {
constexpr cplx I{0.0, 1.0};
}

Eigen::Matrix3cd single_spin_matrix(const SingleSpinDrive& d) {
  Eigen::Matrix3cd j;
  j << d.gamma2 + I * d.delta, 0.0, I * d.omega1,
       0.0, d.gamma2 - I * d.delta, -I * d.omega1,
       2.0 * I * d.omega1, -2.0 * I * d.omega1, d.gamma1;
  return j;
}

SteadyState3 single_spin_steady_state(const SingleSpinDrive& d) {
  const double x = d.delta / d.gamma2;
  const double den = 1.0 + 4.0 * d.omega1 * d.omega1 / (d.gamma1 * d.gamma2) + x * x;
  SteadyState3 s;
  s.p_plus = (d.omega1 / d.gamma2) * cplx(-x, -1.0) * d.pz_eq / den;
  s.p_minus = std::conj(s.p_plus);
  s.p_z = (1.0 + x * x) * d.pz_eq / den;
  return s;
}

SingleSpinDrive ancilla_drive(const SystemParams& p) {
  return {p.spin_b.gamma1, p.spin_b.gamma2, p.drive.delta_b, p.drive.omega_b1, p.spin_b.pz_eq};
}

BlochState coupled_fixed_point(const SystemParams& p, FixedPointMode mode) {
  p.validate();
  const SteadyState3 b = single_spin_steady_state(ancilla_drive(p));
  BlochState s;
  s.pa_plus = 0.0;
  s.pa_z = p.spin_a.pz_eq;
  s.pb_plus = b.p_plus;
  s.pb_z = b.p_z;
  if (mode == FixedPointMode::zeroth_order) return s;

  constexpr int kMaxIter = 50;
  constexpr double kTol = 1e-12;
  const SystemParams pn = normalized(p);
  double residual = theta(s, pn).norm();
  for (int it = 0; it < kMaxIter && residual > kTol; ++it) {
    const Mat6c j = assemble_full_jacobian(jacobian_blocks(pn, s));
    const Eigen::PartialPivLU<Mat6c> lu(j);
    const Vec6c step = lu.solve(theta(s, pn));
    const Vec6c next = expand_state(s) - step;
    // Project back onto the conjugate-symmetric subspace.
    s.pa_plus = 0.5 * (next(0) + std::conj(next(1)));
    s.pa_z = next(2).real();
    s.pb_plus = 0.5 * (next(3) + std::conj(next(4)));
    s.pb_z = next(5).real();
    residual = theta(s, pn).norm();
    if (!std::isfinite(residual)) break;
  }
  if (!(residual <= kTol)) {
    throw NonConvergence("Newton refinement of the fixed point did not converge", residual);
  }
  return s;
}

std::pair<double, double> lab_frame_transverse(cplx p_plus, double omega, double t) {
  const cplx z = p_plus * std::exp(I * (omega * t));
  return {2.0 * z.real(), 2.0 * z.imag()};
}

cplx rotating_frame_transverse(double px, double py, double omega, double t) {
  return 0.5 * cplx(px, py) * std::exp(-I * (omega * t));
}

}  // namespace hhdr
