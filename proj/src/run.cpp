#include "hhdr/run.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>

#include <Eigen/Core>
#include <json.hpp>

#include "hhdr/bloch_steady.hpp"
#include "hhdr/dynamics.hpp"
#include "hhdr/errors.hpp"
#include "hhdr/feasibility.hpp"
#include "hhdr/lme.hpp"
#include "hhdr/stability.hpp"

namespace hhdr {

namespace fs = std::filesystem;

namespace {

std::string fmt(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

class Report {
 public:
  explicit Report(std::string kind) : kind_(std::move(kind)) {}

  void add(const std::string& key, double v, const std::string& unit = "") { rows_.push_back({key, fmt(v), unit}); }
  void add(const std::string& key, const std::string& v, const std::string& unit = "") {
    rows_.push_back({key, v, unit});
  }
  void add_state(const std::string& prefix, const BlochState& s) {
    add(prefix + "pa_plus_re", s.pa_plus.real());
    add(prefix + "pa_plus_im", s.pa_plus.imag());
    add(prefix + "pa_z", s.pa_z);
    add(prefix + "pb_plus_re", s.pb_plus.real());
    add(prefix + "pb_plus_im", s.pb_plus.imag());
    add(prefix + "pb_z", s.pb_z);
  }

  std::string str() const {
    std::string out = "# hhdr-report v1\n# kind: " + kind_ + "\n# columns: key,value,unit\n";
    for (const auto& r : rows_) out += r.key + "," + r.value + "," + r.unit + "\n";
    return out;
  }

 private:
  struct Row {
    std::string key, value, unit;
  };
  std::string kind_;
  std::vector<Row> rows_;
};

void write_file(const fs::path& path, const std::string& text, RunSummary& summary) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error("cannot open output file " + path.string());
  f << text;
  if (!f.flush()) throw Error("failed writing output file " + path.string());
  summary.files.push_back(path);
}

void cmd_fixed_point(const RunConfig& c, const fs::path& dir, RunSummary& s) {
  const SystemParams p = normalized(c.params);
  Report r("fixed-point");
  r.add("units", "omega_a0");
  r.add_state("zeroth_", coupled_fixed_point(p, FixedPointMode::zeroth_order));
  const BlochState n = coupled_fixed_point(p, FixedPointMode::newton);
  r.add_state("newton_", n);
  r.add("newton_residual", (theta(n, p)).cwiseAbs().maxCoeff());
  write_file(dir / "fixed_point.txt", r.str(), s);
}

void cmd_alpha(const RunConfig& c, const fs::path& dir, RunSummary& s) {
  const SystemParams p = normalized(c.params);
  const StabilityPoint sp = stability_point(p, c.include_d0_term);
  const RabiMatching rm = rabi_and_matching(1.0, p.drive.omega_b1, p.drive.delta_b);
  const EigenReport er = full_eigenvalues(p);
  Report r("alpha");
  r.add("delta_b", p.drive.delta_b, "omega_a0");
  r.add("omega_b1", p.drive.omega_b1, "omega_a0");
  r.add("include_d0_term", c.include_d0_term ? "true" : "false");
  r.add("upsilon_re", sp.upsilon.real(), "omega_a0");
  r.add("upsilon_im", sp.upsilon.imag(), "omega_a0");
  r.add("alpha", sp.alpha);
  r.add("alpha_with_d0", alpha_a(p, true));
  r.add("alpha_without_d0", alpha_a(p, false));
  r.add("alpha_unstable", sp.unstable ? "true" : "false");
  r.add("omega_r", rm.omega_r, "omega_a0");
  r.add("hh_mismatch", rm.hh_mismatch, "omega_a0");
  for (int i = 0; i < 6; ++i) {
    r.add("eigenvalue_" + std::to_string(i) + "_re", er.eigenvalues(i).real(), "omega_a0");
    r.add("eigenvalue_" + std::to_string(i) + "_im", er.eigenvalues(i).imag(), "omega_a0");
  }
  r.add("eigen_min_real", er.min_real, "omega_a0");
  r.add("eigen_unstable", er.unstable ? "true" : "false");
  write_file(dir / "alpha.txt", r.str(), s);
}

SweepGrid alpha_grid(const RunConfig& c, int threads) {
  SweepSpec spec = c.alpha_sweep();
  spec.threads = threads;
  return sweep_alpha(spec);
}

void cmd_sweep_alpha(const RunConfig& c, const fs::path& dir, int threads, RunSummary& s) {
  write_file(dir / "alpha_grid.csv", format_grid(alpha_grid(c, threads)), s);
}

void cmd_contour(const RunConfig& c, const fs::path& dir, int threads, RunSummary& s) {
  const SweepGrid g = alpha_grid(c, threads);
  write_file(dir / "alpha_grid.csv", format_grid(g), s);
  write_file(dir / "contour.txt", format_contours(contour_alpha(g, c.contour_level), c.contour_level), s);
}

void cmd_simulate(const RunConfig& c, const fs::path& dir, RunSummary& s) {
  const SystemParams p = normalized(c.params);
  const IntegrationSpec is = c.integration();
  const Trajectory traj = integrate(p, is);

  std::string csv =
      "# hhdr-trajectory v1\n# units: time 1/omega_a0\n# record_stride: " + std::to_string(is.record_stride) +
      "\n# columns: t,pa_plus_re,pa_plus_im,pa_z,pb_plus_re,pb_plus_im,pb_z\n";
  for (std::size_t i = 0; i < traj.times.size(); ++i) {
    const BlochState& st = traj.states[i];
    csv += fmt(traj.times[i]) + "," + fmt(st.pa_plus.real()) + "," + fmt(st.pa_plus.imag()) + "," +
           fmt(st.pa_z) + "," + fmt(st.pb_plus.real()) + "," + fmt(st.pb_plus.imag()) + "," + fmt(st.pb_z) +
           "\n";
  }
  write_file(dir / "trajectory.csv", csv, s);

  Report r("simulate");
  r.add("t_end", traj.t_end, "1/omega_a0");
  r.add("accepted_steps", static_cast<double>(traj.accepted));
  r.add("rejected_steps", static_cast<double>(traj.rejected));
  r.add("max_abs_pz", traj.max_abs_pz);
  r.add_state("final_", traj.states.back());
  try {
    const SeoEstimate e = seo_amplitude(traj, p, c.tail_fraction);
    r.add("seo_status", "ok");
    r.add("seo_amplitude", e.amplitude);
    r.add("seo_threshold", e.threshold);
    r.add("seo_threshold_undriven", e.threshold_undriven);
    r.add("seo_oscillating", e.oscillating ? "true" : "false");
    r.add("seo_envelope_drift", e.envelope_drift);
    r.add("seo_samples", static_cast<double>(e.samples));
  } catch (const PreconditionError& e) {
    r.add("seo_status", "unavailable");
  }
  write_file(dir / "simulate.txt", r.str(), s);
}

void cmd_sweep_seo(const RunConfig& c, const fs::path& dir, int threads, RunSummary& s) {
  SweepSpec spec = c.seo_sweep();
  spec.threads = threads;
  IntegrationSpec is = c.integration();
  is.record_stride = 1;
  const SweepGrid g = sweep_amplitude(spec, is, c.tail_fraction);
  write_file(dir / "seo_grid.csv", format_grid(g), s);
  write_file(dir / "seo_oscillating.csv", format_grid(oscillation_mask(g, spec)), s);
}

void cmd_lme_report(const RunConfig& c, const fs::path& dir, int threads, RunSummary& s) {
  Report r("lme-report");
  const SuBasis b2 = su_basis(2);
  LmeSystem deph;
  deph.omega_h = 0.5 * b2.matrices[2];
  deph.q = b2.matrices[2];
  deph.gamma_e = 1.0;
  deph.eta_e = 0.0;
  const LmeLinearForm f = build_linear_form(deph, b2);
  const LmeStabilityReport rep = lme_stability_report(f);
  r.add("dephasing_gamma_e", 1.0);
  r.add("dephasing_omega0", 1.0);
  for (Eigen::Index i = 0; i < rep.eigenvalues.size(); ++i) {
    r.add("dephasing_eigenvalue_" + std::to_string(i) + "_re", rep.eigenvalues(i).real());
    r.add("dephasing_eigenvalue_" + std::to_string(i) + "_im", rep.eigenvalues(i).imag());
  }

  std::vector<int> dims;
  for (int d = c.lme_dim_min; d <= c.lme_dim_max; ++d) dims.push_back(d);
  const LmeCampaignResult cr = lme_random_campaign(dims, c.lme_instances, c.seed, threads);
  r.add("campaign_seed", std::to_string(c.seed));
  r.add("campaign_dim_min", c.lme_dim_min);
  r.add("campaign_dim_max", c.lme_dim_max);
  r.add("campaign_instances", cr.instances);
  r.add("symmetric_bound_passes", cr.symmetric_bound_passes);
  r.add("diagonal_bound_passes", cr.diagonal_bound_passes);
  r.add("worst_symmetric_margin", cr.worst_symmetric_margin);
  write_file(dir / "lme_report.txt", r.str(), s);
}

void cmd_feasibility(const RunConfig& c, const fs::path& dir, RunSummary& s) {
  PresetOverrides o;
  o.distance = c.distance;
  if (c.oisp) o.pz_a = c.oisp_pz_a;
  const SystemParams p = nv_p1_preset(c.b_field, c.temperature, o);
  const FeasibilityReport f = feasibility_report(p);
  constexpr double two_pi = 2.0 * std::numbers::pi;

  Report r("feasibility");
  r.add("b_field", c.b_field, "T");
  r.add("temperature", c.temperature, "K");
  r.add("distance", c.distance, "m");
  r.add("oisp", c.oisp ? "true" : "false");
  r.add("omega_a0", p.spin_a.omega0, "rad/s");
  r.add("omega_b0", f.omega_b0, "rad/s");
  r.add("omega_b0_over_2pi", f.omega_b0 / two_pi, "Hz");
  r.add("pz_a", f.p_a);
  r.add("pz_b", f.p_b);
  r.add("g", f.g, "rad/s");
  r.add("g_over_2pi", f.g / two_pi, "Hz");
  r.add("kappa", f.kappa);
  r.add("kappa_times_polarizations", f.kappa * std::abs(f.p_a * f.p_b));
  r.add("g_required", f.g_required, "rad/s");
  r.add("g_required_over_2pi", f.g_required / two_pi, "Hz");
  r.add("r_threshold", f.r_threshold, "m");
  r.add("t_critical", f.t_critical, "K");
  r.add("t_critical_at_threshold", critical_temperature(f.g_required), "K");
  write_file(dir / "feasibility.txt", r.str(), s);
}

std::string seeds_used(const std::string& sub, const RunConfig& c) {
  return sub == "lme-report" ? std::to_string(c.seed) : std::string();
}

}  // namespace

std::vector<std::string> subcommands() {
  return {"fixed-point", "alpha", "sweep-alpha", "contour", "simulate", "sweep-seo", "lme-report", "feasibility"};
}

RunSummary run(const std::string& sub, const RunConfig& config, const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  config.validate();
  std::error_code ec;
  fs::create_directories(opts.out_dir, ec);
  if (ec) throw Error("cannot create output directory " + opts.out_dir.string() + ": " + ec.message());

  RunSummary s;
  const fs::path& d = opts.out_dir;
  if (sub == "fixed-point") {
    cmd_fixed_point(config, d, s);
  } else if (sub == "alpha") {
    cmd_alpha(config, d, s);
  } else if (sub == "sweep-alpha") {
    cmd_sweep_alpha(config, d, opts.threads, s);
  } else if (sub == "contour") {
    cmd_contour(config, d, opts.threads, s);
  } else if (sub == "simulate") {
    cmd_simulate(config, d, s);
  } else if (sub == "sweep-seo") {
    cmd_sweep_seo(config, d, opts.threads, s);
  } else if (sub == "lme-report") {
    cmd_lme_report(config, d, opts.threads, s);
  } else if (sub == "feasibility") {
    cmd_feasibility(config, d, s);
  } else {
    throw ConfigError("unknown subcommand '" + sub + "'", 0);
  }
  s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  nlohmann::ordered_json m;
  m["format"] = "hhdr-manifest v1";
  m["version"] = kVersion;
  m["subcommand"] = sub;
  m["config_hash"] = config_hash(config);
  m["seed"] = seeds_used(sub, config);
  m["threads"] = opts.threads;
  m["wall_time_seconds"] = s.wall_seconds;
  m["compiler"] = __VERSION__;
  m["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                       std::to_string(EIGEN_MINOR_VERSION);
  m["command_line"] = opts.command_line;
  auto outputs = nlohmann::ordered_json::array();
  for (const auto& f : s.files) outputs.push_back(f.filename().string());
  m["outputs"] = outputs;
  m["config"] = serialize_config(config);
  write_file(d / "manifest.json", m.dump(2) + "\n", s);
  return s;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidInput*>(&e) ||
      dynamic_cast<const PreconditionError*>(&e)) {
    return 2;
  }
  if (dynamic_cast<const DegeneracyError*>(&e) || dynamic_cast<const NumericError*>(&e)) return 3;
  if (dynamic_cast<const NonConvergence*>(&e) || dynamic_cast<const TruncationError*>(&e)) return 4;
  return 1;
}

std::string error_record(const std::exception& e) {
  const int code = exit_code_for(e);
  const char* kind = code == 2 ? "config" : code == 3 ? "degeneracy" : code == 4 ? "non-convergence" : "error";
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["exit_code"] = code;
  j["message"] = e.what();
  if (const auto* c = dynamic_cast<const ConfigError*>(&e); c && c->line() > 0) j["line"] = c->line();
  return j.dump();
}

std::string format_grid(const SweepGrid& g) {
  std::string out = "# hhdr-grid v1\n";
  out += "# quantity: " + g.quantity + "\n";
  out += "# units: delta_b and omega_b1 in units of omega_a0\n";
  const auto axis = [&](const char* name, const std::vector<double>& v) {
    out += std::string("# ") + name + ": min=" + fmt(v.front()) + " max=" + fmt(v.back()) +
           " count=" + std::to_string(v.size()) + "\n";
  };
  axis("delta_b_norm", g.delta_axis);
  axis("omega_b1_norm", g.omega_b1_axis);
  for (const auto& [k, v] : g.metadata) out += "# " + k + ": " + v + "\n";
  out += "# nan_count: " + std::to_string(g.nan_count) + "\n";
  out += "# columns: delta_b_norm,omega_b1_norm,value\n";
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      out += fmt(g.delta_axis[r]) + "," + fmt(g.omega_b1_axis[c]) + "," + fmt(g.at(r, c)) + "\n";
    }
  }
  return out;
}

std::string format_contours(const std::vector<Polyline>& lines, double level) {
  std::string out = "# hhdr-contour v1\n# level: " + fmt(level) +
                    "\n# polylines: " + std::to_string(lines.size()) + "\n# columns: x=delta_b_norm,y=omega_b1_norm\n";
  for (std::size_t i = 0; i < lines.size(); ++i) {
    out += "\n";
    if (lines[i].closed) out += "# closed\n";
    for (const auto& p : lines[i].points) out += fmt(p.x) + "," + fmt(p.y) + "\n";
  }
  return out;
}

}  // namespace hhdr
