#include "hhdr/sweep.hpp"

#include <cmath>
#include <sstream>

#include "hhdr/bloch_steady.hpp"
#include "hhdr/stability.hpp"
#include "parallel_grid.hpp"

namespace hhdr {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

SweepGrid empty_grid(const SweepSpec& spec, const char* quantity) {
  spec.delta_b.validate("delta_b");
  spec.omega_b1.validate("omega_b1");
  normalized(spec.base).validate();

  SweepGrid grid;
  grid.quantity = quantity;
  grid.delta_axis = spec.delta_b.values();
  grid.omega_b1_axis = spec.omega_b1.values();
  grid.values.assign(grid.rows() * grid.cols(), 0.0);

  const SystemParams p = normalized(spec.base);
  grid.metadata["g"] = num(p.g);
  grid.metadata["gamma_a1"] = num(p.spin_a.gamma1);
  grid.metadata["gamma_a2"] = num(p.spin_a.gamma2);
  grid.metadata["gamma_b1"] = num(p.spin_b.gamma1);
  grid.metadata["gamma_b2"] = num(p.spin_b.gamma2);
  grid.metadata["pz_a"] = num(p.spin_a.pz_eq);
  grid.metadata["pz_b"] = num(p.spin_b.pz_eq);
  return grid;
}

auto alpha_cell(const SweepSpec& spec) {
  const SystemParams base = normalized(spec.base);
  const bool d0 = spec.include_d0_term;
  return [base, d0](double delta, double omega) {
    return alpha_a(cell_params(base, delta, omega), d0);
  };
}

auto amplitude_cell(const SweepSpec& spec, const IntegrationSpec& integration, double tail) {
  const SystemParams base = normalized(spec.base);
  IntegrationSpec is = integration;
  is.record_start = std::max(is.record_start, is.t_end * (1.0 - tail));
  return [base, is, tail](double delta, double omega) {
    const SystemParams p = cell_params(base, delta, omega);
    return seo_amplitude(integrate(p, is), p, tail).amplitude;
  };
}

void tag_amplitude(SweepGrid& grid, const IntegrationSpec& is, double tail) {
  grid.metadata["t_end"] = num(is.t_end);
  grid.metadata["rel_tol"] = num(is.rel_tol);
  grid.metadata["abs_tol"] = num(is.abs_tol);
  grid.metadata["seed_amplitude"] = num(is.seed_amplitude);
  grid.metadata["tail_fraction"] = num(tail);
}

}  // namespace

std::vector<double> SweepAxis::values() const {
  std::vector<double> v(count);
  if (count == 1) {
    v[0] = min;
    return v;
  }
  const double step = (max - min) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) v[i] = min + step * static_cast<double>(i);
  v.back() = max;
  return v;
}

void SweepAxis::validate(const char* name) const {
  const std::string n(name);
  if (count < 1) throw InvalidInput(n + " axis needs at least one point");
  if (!std::isfinite(min) || !std::isfinite(max)) throw InvalidInput(n + " axis is not finite");
  if (count > 1 && !(min < max)) throw InvalidInput(n + " axis must be strictly increasing");
}

SystemParams cell_params(const SystemParams& base, double delta_b, double omega_b1) {
  SystemParams p = base;
  p.drive.delta_b = delta_b;
  p.drive.omega_b1 = omega_b1;
  return p;
}

SweepGrid sweep_alpha(const SweepSpec& spec) {
  SweepGrid grid = empty_grid(spec, "alpha_a");
  grid.metadata["include_d0_term"] = spec.include_d0_term ? "true" : "false";
  detail::fill_parallel(grid, alpha_cell(spec), spec.threads);
  return grid;
}

SweepGrid sweep_alpha_serial(const SweepSpec& spec) {
  SweepGrid grid = empty_grid(spec, "alpha_a");
  grid.metadata["include_d0_term"] = spec.include_d0_term ? "true" : "false";
  detail::fill_serial(grid, alpha_cell(spec));
  return grid;
}

SweepGrid sweep_amplitude(const SweepSpec& spec, const IntegrationSpec& integration,
                          double tail_fraction) {
  integration.validate();
  SweepGrid grid = empty_grid(spec, "seo_amplitude");
  tag_amplitude(grid, integration, tail_fraction);
  detail::fill_parallel(grid, amplitude_cell(spec, integration, tail_fraction), spec.threads);
  return grid;
}

SweepGrid sweep_amplitude_serial(const SweepSpec& spec, const IntegrationSpec& integration,
                                 double tail_fraction) {
  integration.validate();
  SweepGrid grid = empty_grid(spec, "seo_amplitude");
  tag_amplitude(grid, integration, tail_fraction);
  detail::fill_serial(grid, amplitude_cell(spec, integration, tail_fraction));
  return grid;
}

SweepGrid oscillation_mask(const SweepGrid& amplitude, const SweepSpec& spec) {
  SweepGrid mask = amplitude;
  mask.quantity = "seo_oscillating";
  mask.nan_count = 0;
  const SystemParams base = normalized(spec.base);
  for (std::size_t r = 0; r < mask.rows(); ++r) {
    for (std::size_t c = 0; c < mask.cols(); ++c) {
      double& v = mask.values[r * mask.cols() + c];
      if (std::isnan(v)) {
        ++mask.nan_count;
        continue;
      }
      const SystemParams p = cell_params(base, mask.delta_axis[r], mask.omega_b1_axis[c]);
      const double threshold = 10.0 * p.g * std::abs(p.spin_a.pz_eq * coupled_fixed_point(p).pb_z);
      v = v > threshold ? 1.0 : 0.0;
    }
  }
  return mask;
}

}  // namespace hhdr
