#pragma once

#include <cmath>
#include <cstddef>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hhdr/errors.hpp"
#include "hhdr/sweep.hpp"

namespace hhdr::detail {

template <class CellFn>
double guarded_cell(const CellFn& fn, double delta, double omega) {
  try {
    return fn(delta, omega);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

inline void count_nans(SweepGrid& grid) {
  grid.nan_count = 0;
  for (double v : grid.values) grid.nan_count += std::isnan(v) ? 1 : 0;
}

template <class CellFn>
void fill_serial(SweepGrid& grid, const CellFn& fn) {
  const std::size_t nc = grid.cols();
  for (std::size_t r = 0; r < grid.rows(); ++r) {
    for (std::size_t c = 0; c < nc; ++c) {
      grid.values[r * nc + c] = guarded_cell(fn, grid.delta_axis[r], grid.omega_b1_axis[c]);
    }
  }
  count_nans(grid);
}

template <class CellFn>
void fill_parallel(SweepGrid& grid, const CellFn& fn, int threads) {
  const std::ptrdiff_t nc = static_cast<std::ptrdiff_t>(grid.cols());
  const std::ptrdiff_t total = static_cast<std::ptrdiff_t>(grid.rows()) * nc;
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (std::ptrdiff_t k = 0; k < total; ++k) {
    const std::ptrdiff_t r = k / nc;
    const std::ptrdiff_t c = k % nc;
    grid.values[static_cast<std::size_t>(k)] =
        guarded_cell(fn, grid.delta_axis[static_cast<std::size_t>(r)],
                     grid.omega_b1_axis[static_cast<std::size_t>(c)]);
  }
  (void)threads;
  count_nans(grid);
}

}  // namespace hhdr::detail
