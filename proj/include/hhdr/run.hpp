#pragma once

// Subcommand dispatch and the on-disk formats.

#include <exception>
#include <filesystem>
#include <string>
#include <vector>

#include "hhdr/config.hpp"
#include "hhdr/contour.hpp"
#include "hhdr/sweep.hpp"

namespace hhdr {

inline constexpr const char* kVersion = "1.0.0";

struct RunOptions {
  std::filesystem::path out_dir = ".";
  /// 0: OpenMP default.
  int threads = 0;
  /// Recorded verbatim in the manifest.
  std::vector<std::string> command_line;
};

struct RunSummary {
  std::vector<std::filesystem::path> files;
  double wall_seconds = 0.0;
};

/// One of: fixed-point, alpha, sweep-alpha, contour, simulate, sweep-seo,
/// lme-report, feasibility. Writes the outputs plus manifest.json into
/// opts.out_dir (created if missing).
RunSummary run(const std::string& subcommand, const RunConfig& config, const RunOptions& opts);

std::vector<std::string> subcommands();

/// 2 configuration, 3 numeric degeneracy, 4 non-convergence, 1 otherwise.
int exit_code_for(const std::exception& e);

/// Single-line JSON error record {"error": kind, "exit_code": n, "message": ...}.
std::string error_record(const std::exception& e);

/// "# hhdr-grid v1" text: header lines, then delta_b_norm,omega_b1_norm,value
/// rows in row-major order with 12 significant digits.
std::string format_grid(const SweepGrid& grid);

/// "# hhdr-contour v1" text: one block of x,y rows per polyline, blocks
/// separated by a blank line, closed loops preceded by "# closed".
std::string format_contours(const std::vector<Polyline>& lines, double level);

}  // namespace hhdr
