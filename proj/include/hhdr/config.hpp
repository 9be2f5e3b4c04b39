#pragma once

// Flat "key = value" run configuration. '#' starts a comment. Omitted keys
// keep their defaults; an empty text yields the reference color-map
// parameters at the blue Hartmann-Hahn point (delta_b = 0.714,
// omega_b1 = 0.35).

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "hhdr/core_model.hpp"
#include "hhdr/dynamics.hpp"
#include "hhdr/sweep.hpp"

namespace hhdr {

struct RunConfig {
  SystemParams params = reference_params();

  SweepAxis delta_b{-2.0, 2.0, 61};
  SweepAxis omega_b1{0.0125, 1.0, 81};
  bool include_d0_term = false;
  double contour_level = -1.0;

  SweepAxis seo_delta_b{-2.0, 2.0, 25};
  SweepAxis seo_omega_b1{0.0125, 1.0, 25};

  /// 0 selects 40 / gamma_a2 (normalized units).
  double t_end = 0.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  std::uint64_t max_steps = 100'000'000;
  double seed_amplitude = 1e-6;
  int record_stride = 100;
  double tail_fraction = 0.2;

  int lme_dim_min = 2;
  int lme_dim_max = 4;
  int lme_instances = 500;
  std::uint64_t seed = 1;

  double b_field = 0.102;
  double temperature = 0.014;
  double distance = 8e-9;
  bool oisp = true;
  double oisp_pz_a = -1.0;

  bool operator==(const RunConfig&) const = default;

  /// Integration settings for one trajectory of `params`.
  IntegrationSpec integration() const;
  SweepSpec alpha_sweep() const;
  SweepSpec seo_sweep() const;

  /// Throws ConfigError; the message starts with the offending key.
  void validate() const;
};

/// Throws ConfigError carrying the line number for unknown keys, malformed
/// values and failed validation.
RunConfig parse_config(std::string_view text);

/// Every key in a fixed order, doubles with 17 significant digits, so that
/// parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& c);

/// Names of all recognized keys, in serialization order.
std::vector<std::string> config_keys();

/// 64-bit FNV-1a of the serialized configuration, as 16 hex digits.
std::string config_hash(const RunConfig& c);

}  // namespace hhdr
