#pragma once

#include <vector>

#include "hhdr/sweep.hpp"

namespace hhdr {

struct ContourPoint {
  double x = 0.0;  // delta_b axis
  double y = 0.0;  // omega_b1 axis
};

struct Polyline {
  std::vector<ContourPoint> points;
  /// Closed loops do not repeat their first point.
  bool closed = false;
};

/// Level set of the grid by marching squares with linear interpolation on
/// cell edges. Saddle cells are resolved by the sign of the cell average.
/// Cells with a NaN corner are skipped. Returns an empty list when the
/// level is not crossed. Requires at least 2x2 grid points.
std::vector<Polyline> contour_alpha(const SweepGrid& grid, double level);

}  // namespace hhdr
