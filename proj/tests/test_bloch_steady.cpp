#include <doctest.h>

#include <cmath>

#include "hhdr/bloch_steady.hpp"
#include "hhdr/core_model.hpp"
#include "oracles/frozen_values.hpp"

using hhdr::cplx;

TEST_CASE("single spin steady state solves the linear system") {
  const hhdr::SingleSpinDrive d{0.3, 0.7, 0.4, 0.25, -0.8};
  const hhdr::SteadyState3 s = hhdr::single_spin_steady_state(d);
  CHECK(s.p_plus.real() == doctest::Approx(frozen::single_spin_p_plus_re).epsilon(1e-13));
  CHECK(s.p_plus.imag() == doctest::Approx(frozen::single_spin_p_plus_im).epsilon(1e-13));
  CHECK(s.p_z == doctest::Approx(frozen::single_spin_p_z).epsilon(1e-13));
  CHECK(s.p_minus == std::conj(s.p_plus));

  const Eigen::Matrix3cd m = hhdr::single_spin_matrix(d);
  const Eigen::Vector3cd x(s.p_plus, s.p_minus, s.p_z);
  const Eigen::Vector3cd rhs(0.0, 0.0, d.gamma1 * d.pz_eq);
  CHECK((m * x - rhs).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("undriven single spin relaxes to equilibrium") {
  const hhdr::SteadyState3 s = hhdr::single_spin_steady_state({0.1, 0.2, 0.5, 0.0, -0.6});
  CHECK(std::abs(s.p_plus) == 0.0);
  CHECK(s.p_z == doctest::Approx(-0.6));
}

TEST_CASE("zeroth-order fixed point at the blue and red points") {
  const hhdr::BlochState b = hhdr::coupled_fixed_point(hhdr::reference_params(0.714, 0.35));
  CHECK(b.pa_plus == cplx(0.0, 0.0));
  CHECK(b.pa_z == -5e-4);
  CHECK(b.pb_z == doctest::Approx(frozen::blue_pbz0).epsilon(1e-13));
  CHECK(b.pb_plus.real() == doctest::Approx(frozen::blue_pbp0_re).epsilon(1e-13));
  CHECK(b.pb_plus.imag() == doctest::Approx(frozen::blue_pbp0_im).epsilon(1e-13));

  const hhdr::BlochState r = hhdr::coupled_fixed_point(hhdr::reference_params(-0.714, 0.35));
  CHECK(r.pb_z == doctest::Approx(frozen::red_pbz0).epsilon(1e-13));
  CHECK(r.pb_plus.real() == doctest::Approx(frozen::red_pbp0_re).epsilon(1e-13));
}

TEST_CASE("Newton fixed point converges and moves by O(g)") {
  hhdr::SystemParams p = hhdr::reference_params();
  double prev = 0.0;
  for (const double g : {0.1, 0.05, 0.025}) {
    p.g = g;
    const hhdr::BlochState n = hhdr::coupled_fixed_point(p, hhdr::FixedPointMode::newton);
    const hhdr::BlochState z = hhdr::coupled_fixed_point(p);
    CHECK(hhdr::theta(n, p).cwiseAbs().maxCoeff() < 1e-12);
    const double shift = (hhdr::expand_state(n) - hhdr::expand_state(z)).cwiseAbs().maxCoeff();
    if (prev > 0.0) CHECK(prev / shift == doctest::Approx(2.0).epsilon(0.05));
    prev = shift;
  }
}

TEST_CASE("lab and rotating frames are inverse") {
  const cplx z(0.03, -0.04);
  for (const double t : {0.0, 0.3, 17.0}) {
    const auto [px, py] = hhdr::lab_frame_transverse(z, 1.7, t);
    CHECK(std::hypot(px, py) == doctest::Approx(2.0 * std::abs(z)));
    const cplx back = hhdr::rotating_frame_transverse(px, py, 1.7, t);
    CHECK(std::abs(back - z) < 1e-15);
  }
}
