#pragma once

// Two-dimensional parameter sweeps over (delta_b, omega_b1), both in units
// of omega_a0. Rows follow delta_b, columns follow omega_b1; values are
// stored row-major.
//
// Each sweep has an OpenMP kernel and a serial reference. Cells are pure
// functions of their coordinates, so both produce bit-identical grids for
// any thread count.

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "hhdr/core_model.hpp"
#include "hhdr/dynamics.hpp"

namespace hhdr {

struct SweepAxis {
  double min = 0.0;
  double max = 0.0;
  std::size_t count = 1;

  /// Evenly spaced values; a single point sits at `min`.
  std::vector<double> values() const;
  void validate(const char* name) const;

  bool operator==(const SweepAxis&) const = default;
};

struct SweepSpec {
  SweepAxis delta_b{-2.0, 2.0, 61};
  SweepAxis omega_b1{0.0125, 1.0, 81};
  SystemParams base = reference_params();
  /// The reference color map omits the P_bz0^2 / D_0 term.
  bool include_d0_term = false;
  /// 0: OpenMP default.
  int threads = 0;
};

struct SweepGrid {
  std::string quantity;
  std::vector<double> delta_axis;
  std::vector<double> omega_b1_axis;
  std::vector<double> values;
  std::size_t nan_count = 0;
  std::map<std::string, std::string> metadata;

  std::size_t rows() const { return delta_axis.size(); }
  std::size_t cols() const { return omega_b1_axis.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
};

/// Base parameters with the drive replaced by one grid cell.
SystemParams cell_params(const SystemParams& base, double delta_b, double omega_b1);

/// alpha_a over the grid; degenerate cells become quiet NaN.
SweepGrid sweep_alpha(const SweepSpec& spec);
SweepGrid sweep_alpha_serial(const SweepSpec& spec);

/// SEO amplitude over the grid; cells whose integration fails become NaN.
/// Recording starts at the tail window to bound memory.
SweepGrid sweep_amplitude(const SweepSpec& spec, const IntegrationSpec& integration,
                          double tail_fraction = 0.2);
SweepGrid sweep_amplitude_serial(const SweepSpec& spec, const IntegrationSpec& integration,
                                 double tail_fraction = 0.2);

/// 1 where the amplitude exceeds the cell's SEO threshold (see
/// SeoEstimate::threshold), 0 where it does not, NaN where the amplitude is
/// NaN.
SweepGrid oscillation_mask(const SweepGrid& amplitude, const SweepSpec& spec);

}  // namespace hhdr
