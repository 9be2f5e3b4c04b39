#include "hhdr/core_model.hpp"

#include <cmath>
#include <string>

#include "hhdr/errors.hpp"

namespace hhdr {

namespace {

constexpr cplx I{0.0, 1.0};

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidInput(what);
}

bool finite(double x) { return std::isfinite(x); }
bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

void SystemParams::validate() const {
  const auto check_spin = [](const SpinParams& s, const char* tag) {
    const std::string t(tag);
    require(finite(s.omega0) && finite(s.gamma1) && finite(s.gamma2) && finite(s.pz_eq),
            "spin " + t + " parameters must be finite");
    require(s.gamma1 > 0.0, "gamma_" + t + "1 must be > 0");
    require(s.gamma2 > 0.0, "gamma_" + t + "2 must be > 0");
    require(s.pz_eq >= -1.0 && s.pz_eq <= 1.0, "pz_" + t + " must lie in [-1, 1]");
  };
  check_spin(spin_a, "a");
  check_spin(spin_b, "b");
  require(spin_a.omega0 > 0.0, "omega_a0 must be > 0");
  require(spin_b.omega0 >= 0.0, "omega_b0 must be >= 0");
  require(finite(drive.omega_b1) && finite(drive.delta_b), "drive parameters must be finite");
  require(drive.omega_b1 >= 0.0, "omega_b1 must be >= 0");
  require(finite(g) && g >= 0.0, "g must be >= 0");
  if (units == UnitsMode::normalized) {
    require(spin_a.omega0 == 1.0, "omega_a0 must equal 1 in normalized units");
  }
}

SystemParams normalized(const SystemParams& p) {
  if (p.units == UnitsMode::normalized) return p;
  require(p.spin_a.omega0 > 0.0, "omega_a0 must be > 0");
  const double s = p.spin_a.omega0;
  SystemParams n = p;
  for (SpinParams* sp : {&n.spin_a, &n.spin_b}) {
    sp->omega0 /= s;
    sp->gamma1 /= s;
    sp->gamma2 /= s;
  }
  n.spin_a.omega0 = 1.0;
  n.drive.omega_b1 /= s;
  n.drive.delta_b /= s;
  n.g /= s;
  n.units = UnitsMode::normalized;
  return n;
}

SystemParams reference_params(double delta_b, double omega_b1) {
  SystemParams p;
  p.spin_a = {1.0, 1e-2, 1e-4, -5e-4};
  p.spin_b = {0.0, 3.7e-3, 3.7e-2, -1.0};
  p.drive = {omega_b1, delta_b};
  p.g = 1.0;
  p.units = UnitsMode::normalized;
  return p;
}

Vec6c expand_state(const BlochState& s) {
  Vec6c v;
  v << s.pa_plus, std::conj(s.pa_plus), s.pa_z, s.pb_plus, std::conj(s.pb_plus), s.pb_z;
  return v;
}

BlochState reduce_state(const Vec6c& full, double tol) {
  for (int i = 0; i < 6; ++i) {
    if (!finite(full(i))) throw InvalidInput("state component is not finite");
  }
  const double err_a = std::abs(full(1) - std::conj(full(0)));
  const double err_b = std::abs(full(4) - std::conj(full(3)));
  if (err_a > tol || err_b > tol) {
    throw InvalidInput("conjugate-pair relation violated (|dP_a|=" + std::to_string(err_a) +
                       ", |dP_b|=" + std::to_string(err_b) + ")");
  }
  if (std::abs(full(2).imag()) > tol || std::abs(full(5).imag()) > tol) {
    throw InvalidInput("longitudinal components must be real");
  }
  BlochState s;
  s.pa_plus = 0.5 * (full(0) + std::conj(full(1)));
  s.pa_z = full(2).real();
  s.pb_plus = 0.5 * (full(3) + std::conj(full(4)));
  s.pb_z = full(5).real();
  return s;
}

Vec6c theta(const BlochState& s, const SystemParams& p) {
  if (!finite(s.pa_plus) || !finite(s.pb_plus) || !finite(s.pa_z) || !finite(s.pb_z)) {
    throw InvalidInput("state component is not finite");
  }
  const auto& a = p.spin_a;
  const auto& b = p.spin_b;
  const double g = p.g;
  const double wb1 = p.drive.omega_b1;
  const double db = p.drive.delta_b;

  const cplx pap = s.pa_plus;
  const cplx pam = std::conj(pap);
  const cplx pbp = s.pb_plus;
  const cplx pbm = std::conj(pbp);

  Vec6c th;
  th(0) = (a.gamma2 - I * a.omega0) * pap + I * g * s.pa_z * s.pb_z;
  th(1) = std::conj(th(0));
  th(2) = a.gamma1 * (s.pa_z - a.pz_eq) + 2.0 * I * g * (pap - pam) * s.pb_z;
  th(3) = (b.gamma2 + I * db) * pbp + I * wb1 * s.pb_z - 2.0 * I * g * (pap + pam) * pbp;
  th(4) = std::conj(th(3));
  th(5) = b.gamma1 * (s.pb_z - b.pz_eq) + 2.0 * I * wb1 * (pbp - pbm);
  return th;
}

Vec6c theta_rhs(const BlochState& s, const SystemParams& p) { return -theta(s, p); }

JacobianBlocks jacobian_blocks(const SystemParams& p, const BlochState& fp) {
  const auto& a = p.spin_a;
  const auto& b = p.spin_b;
  const double g = p.g;
  const double wb1 = p.drive.omega_b1;
  const double db = p.drive.delta_b;
  const cplx pbp = fp.pb_plus;
  const cplx pbm = std::conj(pbp);
  const cplx pa_sum = fp.pa_plus + std::conj(fp.pa_plus);
  const cplx pa_diff = fp.pa_plus - std::conj(fp.pa_plus);

  JacobianBlocks jb;
  jb.g = g;
  jb.jx << a.gamma2 - I * a.omega0, 0.0,
           0.0, a.gamma2 + I * a.omega0;

  jb.jy << a.gamma1, 0.0, 0.0, 0.0,
           0.0, b.gamma2 + I * db, 0.0, I * wb1,
           0.0, 0.0, b.gamma2 - I * db, -I * wb1,
           0.0, 2.0 * I * wb1, -2.0 * I * wb1, b.gamma1;
  // State-dependent coupling entries; zero when P_a+ = 0.
  jb.jy(0, 3) += 2.0 * I * g * pa_diff;
  jb.jy(1, 1) += -2.0 * I * g * pa_sum;
  jb.jy(2, 2) += 2.0 * I * g * pa_sum;

  jb.vxy << I * fp.pb_z, 0.0, 0.0, I * fp.pa_z,
            -I * fp.pb_z, 0.0, 0.0, -I * fp.pa_z;

  jb.vyx << 2.0 * I * fp.pb_z, -2.0 * I * fp.pb_z,
            -2.0 * I * pbp, -2.0 * I * pbp,
            2.0 * I * pbm, 2.0 * I * pbm,
            0.0, 0.0;
  return jb;
}

Mat6c assemble_full_jacobian(const JacobianBlocks& b) {
  Mat6c j = Mat6c::Zero();
  j.block<2, 2>(0, 0) = b.jx;
  j.block<4, 4>(2, 2) = b.jy;
  j.block<2, 4>(0, 2) = b.g * b.vxy;
  j.block<4, 2>(2, 0) = b.g * b.vyx;
  return j;
}

}  // namespace hhdr
