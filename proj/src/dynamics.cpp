#include "hhdr/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "hhdr/bloch_steady.hpp"

namespace hhdr {

namespace {

using State = std::array<double, 6>;

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

State to_real(const BlochState& s) {
  return {s.pa_plus.real(), s.pa_plus.imag(), s.pa_z, s.pb_plus.real(), s.pb_plus.imag(), s.pb_z};
}

BlochState from_real(const State& y) {
  return {cplx(y[0], y[1]), y[2], cplx(y[3], y[4]), y[5]};
}

double error_norm(const State& err, const State& y0, const State& y1, double rtol, double atol) {
  double acc = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double r = err[i] / sc;
    acc += r * r;
  }
  return std::sqrt(acc / 6.0);
}

double initial_step(const SystemParams& p, const State& y0, const State& f0, double rtol,
                    double atol) {
  double d0 = 0.0, d1 = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double sc = atol + rtol * std::abs(y0[i]);
    d0 += (y0[i] / sc) * (y0[i] / sc);
    d1 += (f0[i] / sc) * (f0[i] / sc);
  }
  d0 = std::sqrt(d0 / 6.0);
  d1 = std::sqrt(d1 / 6.0);
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;

  State y1, f1;
  for (int i = 0; i < 6; ++i) y1[i] = y0[i] + h0 * f0[i];
  mean_field_rhs(p, y1.data(), f1.data());
  double d2 = 0.0;
  for (int i = 0; i < 6; ++i) {
    const double sc = atol + rtol * std::abs(y0[i]);
    d2 += ((f1[i] - f0[i]) / sc) * ((f1[i] - f0[i]) / sc);
  }
  d2 = std::sqrt(d2 / 6.0) / h0;
  const double dm = std::max(d1, d2);
  const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 1.0 / 5.0);
  return std::min(100.0 * h0, h1);
}

}  // namespace

void IntegrationSpec::validate() const {
  if (!(t_end > 0.0) || !std::isfinite(t_end)) throw InvalidInput("t_end must be > 0");
  if (!(rel_tol > 0.0 && rel_tol <= 1e-2)) throw InvalidInput("rel_tol must lie in (0, 1e-2]");
  if (!(abs_tol > 0.0 && abs_tol <= 1e-2)) throw InvalidInput("abs_tol must lie in (0, 1e-2]");
  if (max_steps == 0) throw InvalidInput("max_steps must be > 0");
  if (record_stride < 1) throw InvalidInput("record_stride must be >= 1");
}

IntegrationSpec default_integration(const SystemParams& params) {
  const SystemParams p = normalized(params);
  IntegrationSpec spec;
  spec.t_end = 40.0 / p.spin_a.gamma2;
  return spec;
}

BlochState seeded_initial_state(const SystemParams& p, double seed_amplitude) {
  BlochState s = coupled_fixed_point(p);
  s.pa_plus += seed_amplitude;
  return s;
}

void mean_field_rhs(const SystemParams& p, const double* y, double* dydt) {
  const cplx pap(y[0], y[1]);
  const double paz = y[2];
  const cplx pbp(y[3], y[4]);
  const double pbz = y[5];
  const double g = p.g;
  const double wb1 = p.drive.omega_b1;

  const cplx dpa = -cplx(p.spin_a.gamma2, -p.spin_a.omega0) * pap - cplx(0.0, g * paz * pbz);
  const double dpaz = -p.spin_a.gamma1 * (paz - p.spin_a.pz_eq) + 4.0 * g * pap.imag() * pbz;
  const cplx dpb = -cplx(p.spin_b.gamma2, p.drive.delta_b - 4.0 * g * pap.real()) * pbp -
                   cplx(0.0, wb1 * pbz);
  const double dpbz = -p.spin_b.gamma1 * (pbz - p.spin_b.pz_eq) + 4.0 * wb1 * pbp.imag();

  dydt[0] = dpa.real();
  dydt[1] = dpa.imag();
  dydt[2] = dpaz;
  dydt[3] = dpb.real();
  dydt[4] = dpb.imag();
  dydt[5] = dpbz;
}

Trajectory integrate(const SystemParams& params, const IntegrationSpec& spec) {
  params.validate();
  spec.validate();
  const SystemParams p = normalized(params);
  const double rtol = spec.rel_tol;
  const double atol = spec.abs_tol;

  Trajectory traj;
  traj.t_start = 0.0;
  traj.t_end = spec.t_end;

  State y = to_real(spec.initial_state ? *spec.initial_state
                                       : seeded_initial_state(p, spec.seed_amplitude));
  for (double v : y) {
    if (!std::isfinite(v)) throw InvalidInput("initial state is not finite");
  }
  double t = 0.0;
  traj.max_abs_pz = std::max(std::abs(y[2]), std::abs(y[5]));
  if (t >= spec.record_start) {
    traj.times.push_back(t);
    traj.states.push_back(from_real(y));
  }

  State k1, k2, k3, k4, k5, k6, k7, ytmp, ynew, err;
  mean_field_rhs(p, y.data(), k1.data());
  double h = std::min(initial_step(p, y, k1, rtol, atol), spec.t_end);
  bool last_rejected = false;
  bool recorded_last = false;

  while (t < spec.t_end) {
    if (traj.accepted + traj.rejected >= spec.max_steps) {
      if (!recorded_last) {
        traj.times.push_back(t);
        traj.states.push_back(from_real(y));
      }
      traj.t_end = t;
      throw TruncationError("integration exceeded max_steps", std::move(traj));
    }
    bool final_step = false;
    if (t + h >= spec.t_end) {
      h = spec.t_end - t;
      final_step = true;
    }

    for (int i = 0; i < 6; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
    mean_field_rhs(p, ytmp.data(), k2.data());
    for (int i = 0; i < 6; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    mean_field_rhs(p, ytmp.data(), k3.data());
    for (int i = 0; i < 6; ++i) ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    mean_field_rhs(p, ytmp.data(), k4.data());
    for (int i = 0; i < 6; ++i)
      ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    mean_field_rhs(p, ytmp.data(), k5.data());
    for (int i = 0; i < 6; ++i)
      ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    mean_field_rhs(p, ytmp.data(), k6.data());
    for (int i = 0; i < 6; ++i)
      ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    mean_field_rhs(p, ynew.data(), k7.data());
    for (int i = 0; i < 6; ++i)
      err[i] = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);

    const double en = error_norm(err, y, ynew, rtol, atol);
    if (!std::isfinite(en)) {
      throw NumericError("non-finite state during integration at t=" + std::to_string(t));
    }
    if (en <= 1.0) {
      t = final_step ? spec.t_end : t + h;
      y = ynew;
      k1 = k7;  // FSAL
      ++traj.accepted;
      traj.max_abs_pz = std::max({traj.max_abs_pz, std::abs(y[2]), std::abs(y[5])});
      recorded_last = false;
      if (t >= spec.record_start &&
          (traj.accepted % static_cast<std::size_t>(spec.record_stride) == 0 || t >= spec.t_end)) {
        traj.times.push_back(t);
        traj.states.push_back(from_real(y));
        recorded_last = true;
      }
      const double fac = en == 0.0 ? 5.0 : 0.9 * std::pow(en, -0.2);
      h *= std::clamp(fac, 0.2, last_rejected ? 1.0 : 5.0);
      last_rejected = false;
    } else {
      ++traj.rejected;
      h *= std::max(0.2, 0.9 * std::pow(en, -0.2));
      last_rejected = true;
    }
  }
  return traj;
}

SeoEstimate seo_amplitude(const Trajectory& traj, const SystemParams& params, double tail_fraction) {
  const SystemParams p = normalized(params);
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) {
    throw PreconditionError("tail_fraction must lie in (0, 1]");
  }
  const double t_lo = traj.t_end - tail_fraction * (traj.t_end - traj.t_start);
  const auto first = std::lower_bound(traj.times.begin(), traj.times.end(), t_lo);
  const std::size_t i0 = static_cast<std::size_t>(first - traj.times.begin());
  const std::size_t n = traj.times.size() - i0;
  const double period = 2.0 * std::numbers::pi / p.spin_a.omega0;
  if (n < 100) throw PreconditionError("tail window holds fewer than 100 samples");
  const double span = traj.times.back() - traj.times[i0];
  if (span < 20.0 * period) throw PreconditionError("tail window spans fewer than 20 periods");

  // Time-weighted (trapezoid) mean and RMS of Re(P_a+) over [lo, hi).
  const auto window_amplitude = [&](std::size_t lo, std::size_t hi) {
    double integral = 0.0, duration = 0.0;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double dt = traj.times[i] - traj.times[i - 1];
      integral += 0.5 * dt * (traj.states[i].pa_plus.real() + traj.states[i - 1].pa_plus.real());
      duration += dt;
    }
    if (duration <= 0.0) return std::nan("");
    const double mean = integral / duration;
    double sq = 0.0;
    for (std::size_t i = lo + 1; i < hi; ++i) {
      const double dt = traj.times[i] - traj.times[i - 1];
      const double u = traj.states[i].pa_plus.real() - mean;
      const double v = traj.states[i - 1].pa_plus.real() - mean;
      sq += 0.5 * dt * (u * u + v * v);
    }
    return std::sqrt(2.0 * sq / duration);
  };

  SeoEstimate est;
  est.samples = n;
  est.amplitude = window_amplitude(i0, traj.times.size());
  const double pbz0 = coupled_fixed_point(p).pb_z;
  est.threshold = 10.0 * p.g * std::abs(p.spin_a.pz_eq * pbz0) / p.spin_a.omega0;
  est.threshold_undriven = 10.0 * p.g * std::abs(p.spin_a.pz_eq * p.spin_b.pz_eq) / p.spin_a.omega0;
  est.oscillating = est.amplitude > est.threshold;

  constexpr int kWindows = 10;
  const double t0 = traj.times[i0];
  const double width = span / kWindows;
  std::vector<double> amps;
  std::size_t lo = i0;
  for (int w = 0; w < kWindows; ++w) {
    const double t_hi = w + 1 == kWindows ? traj.times.back() : t0 + (w + 1) * width;
    std::size_t hi = lo;
    while (hi < traj.times.size() && traj.times[hi] <= t_hi) ++hi;
    amps.push_back(window_amplitude(lo, hi));
    lo = hi == 0 ? 0 : hi - 1;
  }
  const auto [mn, mx] = std::minmax_element(amps.begin(), amps.end());
  double mean = 0.0;
  for (double a : amps) mean += a;
  mean /= kWindows;
  est.envelope_drift = mean > 0.0 ? (*mx - *mn) / mean : 0.0;
  return est;
}

}  // namespace hhdr
