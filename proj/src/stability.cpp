#include "hhdr/stability.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "hhdr/errors.hpp"

namespace hhdr {

namespace {

constexpr cplx I{0.0, 1.0};
constexpr double kSingular = 1e-300;

Eigen::Matrix4cd ancilla_block(const SystemParams& p) {
  return jacobian_blocks(p, coupled_fixed_point(p)).jy;
}

cplx hh_closed(const SystemParams& p, const BlochState& fp, const DenominatorSet& d) {
  const cplx pbm = std::conj(fp.pb_plus);
  return 2.0 * I * p.drive.omega_b1 * fp.pa_z * (d.d2 * fp.pb_plus + d.d1 * pbm) / d.d_l;
}

}  // namespace

DenominatorSet denominators(const SystemParams& params, double omega) {
  const SystemParams p = normalized(params);
  const double ga1 = p.spin_a.gamma1;
  const double gb1 = p.spin_b.gamma1;
  const double gb2 = p.spin_b.gamma2;
  const double db = p.drive.delta_b;
  const double wb1 = p.drive.omega_b1;

  DenominatorSet d;
  d.d0 = cplx(ga1, -omega);
  d.d1 = cplx(gb2, db - omega);
  d.d2 = cplx(gb2, -db - omega);
  d.d3 = cplx(gb1, -omega);
  d.d_l = d.d1 * d.d2 * d.d3 + 2.0 * wb1 * wb1 * (d.d1 + d.d2);
  d.omega_r = std::sqrt(4.0 * wb1 * wb1 + db * db);

  const double w2 = omega * omega;
  const double eta_re = db * db / w2 - (1.0 + (2.0 * gb2 / gb1) * (1.0 - 2.0 * wb1 * wb1 / w2) - gb2 * gb2 / w2);
  const double eta_im =
      (1.0 - (2.0 * gb1 / omega + gb2 / omega) * (gb2 / omega) - d.omega_r * d.omega_r / w2) /
      (gb1 / omega);
  d.eta = cplx(eta_re, eta_im);
  return d;
}

Eigen::Matrix4cd chi_y(const SystemParams& params, double omega, ChiMethod method) {
  const SystemParams p = normalized(params);
  if (method == ChiMethod::numeric) {
    const Eigen::Matrix4cd a = ancilla_block(p) - I * omega * Eigen::Matrix4cd::Identity();
    const Eigen::FullPivLU<Eigen::Matrix4cd> lu(a);
    const double det = std::abs(lu.determinant());
    if (!(det > kSingular)) throw DegeneracyError("J_y - i*omega is singular", det);
    return lu.inverse();
  }

  const DenominatorSet d = denominators(p, omega);
  if (!(std::abs(d.d_l) > kSingular) || !(std::abs(d.d0) > kSingular)) {
    throw DegeneracyError("J_y - i*omega is singular", std::abs(d.d0 * d.d_l));
  }
  const double w = p.drive.omega_b1;
  const double w2 = 2.0 * w * w;
  Eigen::Matrix4cd c;
  c << d.d_l / d.d0, 0.0, 0.0, 0.0,
       0.0, d.d2 * d.d3 + w2, w2, -I * w * d.d2,
       0.0, w2, d.d1 * d.d3 + w2, I * w * d.d1,
       0.0, -2.0 * I * w * d.d2, 2.0 * I * w * d.d1, d.d1 * d.d2;
  return c / d.d_l;
}

Eigen::Matrix2cd feedback_kernel(const SystemParams& params, double omega, bool include_d0_term) {
  const SystemParams p = normalized(params);
  const JacobianBlocks jb = jacobian_blocks(p, coupled_fixed_point(p));
  Eigen::Matrix4cd chi = chi_y(p, omega, ChiMethod::numeric);
  if (!include_d0_term) chi(0, 0) = 0.0;
  return jb.vxy * chi * jb.vyx;
}

cplx upsilon_a(const SystemParams& params, UpsilonMethod method, bool include_d0_term,
               UpsilonChannel channel) {
  const SystemParams p = normalized(params);
  const double g2 = p.g * p.g;
  const double hh_sign = channel == UpsilonChannel::resonant ? -1.0 : 1.0;

  switch (method) {
    case UpsilonMethod::matrix: {
      const Eigen::Matrix2cd k = feedback_kernel(p, 1.0, include_d0_term);
      return g2 * (channel == UpsilonChannel::resonant ? k(1, 1) : k(0, 0));
    }
    case UpsilonMethod::closed: {
      const BlochState fp = coupled_fixed_point(p);
      const DenominatorSet d = denominators(p, 1.0);
      if (!(std::abs(d.d_l) > kSingular)) throw DegeneracyError("D_L vanishes", std::abs(d.d_l));
      const cplx d0_term = include_d0_term ? fp.pb_z * fp.pb_z / d.d0 : cplx(0.0);
      return -2.0 * g2 * (d0_term + hh_sign * hh_closed(p, fp, d));
    }
    case UpsilonMethod::normalized: {
      const double ga1 = p.spin_a.gamma1;
      const double gb1 = p.spin_b.gamma1;
      const double gb2 = p.spin_b.gamma2;
      const double db = p.drive.delta_b;
      const double wb1 = p.drive.omega_b1;
      const double w0 = p.spin_a.omega0;
      const DenominatorSet d = denominators(p, w0);
      if (!(std::abs(d.eta) > kSingular)) throw DegeneracyError("eta vanishes", std::abs(d.eta));
      const double den = 1.0 + 4.0 * wb1 * wb1 / (gb1 * gb2) + db * db / (gb2 * gb2);
      const cplx printed = 4.0 * cplx(1.0, 2.0 * gb2 / w0) * db * wb1 * wb1 * p.spin_a.pz_eq *
                           p.spin_b.pz_eq / (gb2 * gb2 * gb1 * d.eta) / den;
      cplx ups = hh_sign * (2.0 * g2 / w0) * printed;
      if (include_d0_term) {
        const double pbz0 = (1.0 + db * db / (gb2 * gb2)) * p.spin_b.pz_eq / den;
        ups += -2.0 * g2 * pbz0 * pbz0 / cplx(ga1, -w0);
      }
      return ups;
    }
  }
  return {};
}

cplx upsilon_d0_term_as_printed(const SystemParams& params) {
  const SystemParams p = normalized(params);
  const double ga1 = p.spin_a.gamma1;
  const double gb1 = p.spin_b.gamma1;
  const double gb2 = p.spin_b.gamma2;
  const double db = p.drive.delta_b;
  const double wb1 = p.drive.omega_b1;
  const double w0 = p.spin_a.omega0;
  const double x = db * db / (gb2 * gb2);
  const double den = 1.0 + 4.0 * wb1 * wb1 / (gb1 * gb2) + x;
  const cplx line = (1.0 + x) * cplx(ga1 / w0, -1.0) * p.spin_b.pz_eq * p.spin_b.pz_eq /
                    (den * den * (1.0 + ga1 * ga1 / (w0 * w0)));
  return (2.0 * p.g * p.g / w0) * line;
}

double alpha_a(const SystemParams& params, bool include_d0_term) {
  const SystemParams p = normalized(params);
  return -upsilon_a(p, UpsilonMethod::matrix, include_d0_term).real() / p.spin_a.gamma2;
}

RabiMatching rabi_and_matching(double omega_a0, double omega_b1, double delta_b) {
  RabiMatching r;
  r.omega_r = std::sqrt(4.0 * omega_b1 * omega_b1 + delta_b * delta_b);
  r.hh_mismatch = r.omega_r - omega_a0;
  const double disc = omega_a0 * omega_a0 - 4.0 * omega_b1 * omega_b1;
  if (disc > 0.0) {
    const double s = std::sqrt(disc);
    r.matching_detunings = {-s, s};
  } else if (disc == 0.0) {
    r.matching_detunings = {0.0};
  }
  return r;
}

EigenReport full_eigenvalues(const SystemParams& params, FixedPointMode mode) {
  const SystemParams p = normalized(params);
  const Mat6c j = assemble_full_jacobian(jacobian_blocks(p, coupled_fixed_point(p, mode)));
  const Eigen::ComplexEigenSolver<Mat6c> es(j, false);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue solver failed");

  EigenReport r;
  r.eigenvalues = es.eigenvalues();
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end(), [](cplx a, cplx b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  r.min_real = r.eigenvalues(0).real();
  r.unstable = r.min_real < 0.0;
  return r;
}

StabilityPoint stability_point(const SystemParams& params, bool include_d0_term) {
  const SystemParams p = normalized(params);
  StabilityPoint s;
  s.upsilon = upsilon_a(p, UpsilonMethod::matrix, include_d0_term);
  s.alpha = -s.upsilon.real() / p.spin_a.gamma2;
  s.eigenvalues = full_eigenvalues(p).eigenvalues;
  s.hh_mismatch = rabi_and_matching(1.0, p.drive.omega_b1, p.drive.delta_b).hh_mismatch;
  s.unstable = s.alpha < -1.0;
  s.denominators = denominators(p, 1.0);
  return s;
}

}  // namespace hhdr
