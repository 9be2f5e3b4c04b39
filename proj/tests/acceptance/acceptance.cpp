// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria (capped at 100). Tolerances are fixed below.
#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hhdr/bloch_steady.hpp"
#include "hhdr/config.hpp"
#include "hhdr/contour.hpp"
#include "hhdr/core_model.hpp"
#include "hhdr/dynamics.hpp"
#include "hhdr/feasibility.hpp"
#include "hhdr/lme.hpp"
#include "hhdr/stability.hpp"
#include "hhdr/sweep.hpp"

namespace fs = std::filesystem;
using hhdr::cplx;

namespace {

constexpr double kChiTol = 1e-10;
constexpr int kChiDraws = 1000;
constexpr double kChiSeconds = 5.0;

constexpr double kUpsClosedTol = 1e-10;
constexpr double kUpsNormalizedTol = 1e-9;
constexpr double kUpsScalingTol = 1e-13;
constexpr int kUpsDraws = 1000;
constexpr double kUpsSeconds = 5.0;

constexpr double kJacobianTol = 1e-5;
constexpr double kJacobianStep = 1e-6;
constexpr int kJacobianDraws = 100;

constexpr double kShiftRelTol = 0.02;

constexpr double kMaximizerWindow = 0.1;
constexpr double kMaximizerMaxOmegaB1 = 0.45;
constexpr double kMapSeconds = 30.0;

constexpr double kDistanceNm = 8.0;
constexpr double kDistanceTolNm = 0.5;
constexpr double kCooperativityTol = 1e-10;

constexpr double kSeoRatio = 10.0;
constexpr double kSeoDrift = 0.05;
constexpr double kSeoSeed = 1e-6;
constexpr double kSeoSeconds = 120.0;
constexpr double kBoundednessSlack = 1e-3;

constexpr double kJaccard = 0.3;
constexpr double kOverlapSeconds = 1800.0;

constexpr double kDecayTolFactor = 10.0;
constexpr double kDecayRelTol = 1e-9;

constexpr double kLmeEigTol = 1e-10;
constexpr double kLmeNormTol = 1e-11;
constexpr double kLmeTraceTol = 1e-12;
constexpr double kLmeBoundMargin = 1e-9;
constexpr double kLmeDetTol = 1e-10;
constexpr double kLmeBasisTol = 1e-13;
constexpr int kLmeInstances = 500;
constexpr double kLmeSeconds = 30.0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

hhdr::SystemParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  hhdr::SystemParams p = hhdr::reference_params(4.0 * u(rng) - 2.0, 0.01 + u(rng));
  p.spin_a.gamma1 = 1e-3 + 0.05 * u(rng);
  p.spin_a.gamma2 = 1e-4 + 0.05 * u(rng);
  p.spin_b.gamma1 = 1e-3 + 0.05 * u(rng);
  p.spin_b.gamma2 = 1e-3 + 0.1 * u(rng);
  p.spin_a.pz_eq = -u(rng);
  p.spin_b.pz_eq = -u(rng);
  p.g = 0.01 + u(rng);
  return p;
}

Outcome chi_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  std::uniform_real_distribution<double> w(0.2, 2.0);
  double worst = 0.0;
  for (int k = 0; k < kChiDraws; ++k) {
    const hhdr::SystemParams p = random_params(rng);
    const double omega = w(rng);
    const Eigen::Matrix4cd a = hhdr::chi_y(p, omega, hhdr::ChiMethod::closed);
    const Eigen::Matrix4cd b = hhdr::chi_y(p, omega, hhdr::ChiMethod::numeric);
    worst = std::max(worst, (a - b).norm() / b.norm());
  }
  const double s = seconds_since(t0);
  return {worst <= kChiTol && s < kChiSeconds,
          std::to_string(kChiDraws) + " draws, max rel " + fmt("%.2e", worst) + " (tol 1e-10), " + fmt("%.2f s", s)};
}

Outcome upsilon_agreement() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1002);
  double closed = 0.0, normalized = 0.0, scaling = 0.0;
  for (int k = 0; k < kUpsDraws; ++k) {
    hhdr::SystemParams p = random_params(rng);
    const cplx m = hhdr::upsilon_a(p, hhdr::UpsilonMethod::matrix, true);
    closed = std::max(closed, rel(hhdr::upsilon_a(p, hhdr::UpsilonMethod::closed, true), m));
    const cplx m0 = hhdr::upsilon_a(p, hhdr::UpsilonMethod::matrix, false);
    normalized = std::max(normalized, rel(hhdr::upsilon_a(p, hhdr::UpsilonMethod::normalized, false), m0));
    p.g *= 0.5;
    const cplx half = hhdr::upsilon_a(p, hhdr::UpsilonMethod::matrix, true);
    scaling = std::max(scaling, rel(4.0 * half, m));
  }
  const double s = seconds_since(t0);
  return {closed <= kUpsClosedTol && normalized <= kUpsNormalizedTol && scaling <= kUpsScalingTol && s < kUpsSeconds,
          "closed " + fmt("%.2e", closed) + ", normalized " + fmt("%.2e", normalized) + ", g^2 scaling " +
              fmt("%.2e", scaling) + ", " + fmt("%.2f s", s)};
}

Outcome jacobian_fidelity() {
  constexpr cplx I{0.0, 1.0};
  std::mt19937_64 rng(1003);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  const double h = kJacobianStep;
  double worst = 0.0;
  for (int k = 0; k < kJacobianDraws; ++k) {
    hhdr::SystemParams p = random_params(rng);
    p.g *= 2.0;
    const hhdr::BlochState s{{u(rng), u(rng)}, u(rng), {u(rng), u(rng)}, u(rng)};
    const hhdr::Mat6c j = hhdr::assemble_full_jacobian(hhdr::jacobian_blocks(p, s));
    const auto diff = [&](auto&& bump) {
      hhdr::BlochState a = s, b = s;
      bump(a, h);
      bump(b, -h);
      return hhdr::Vec6c((hhdr::theta(a, p) - hhdr::theta(b, p)) / (2.0 * h));
    };
    const hhdr::Vec6c da_re = diff([](hhdr::BlochState& x, double e) { x.pa_plus += e; });
    const hhdr::Vec6c da_im = diff([](hhdr::BlochState& x, double e) { x.pa_plus += cplx(0.0, e); });
    const hhdr::Vec6c db_re = diff([](hhdr::BlochState& x, double e) { x.pb_plus += e; });
    const hhdr::Vec6c db_im = diff([](hhdr::BlochState& x, double e) { x.pb_plus += cplx(0.0, e); });
    hhdr::Mat6c fd;
    fd.col(0) = 0.5 * (da_re - I * da_im);
    fd.col(1) = 0.5 * (da_re + I * da_im);
    fd.col(2) = diff([](hhdr::BlochState& x, double e) { x.pa_z += e; });
    fd.col(3) = 0.5 * (db_re - I * db_im);
    fd.col(4) = 0.5 * (db_re + I * db_im);
    fd.col(5) = diff([](hhdr::BlochState& x, double e) { x.pb_z += e; });
    worst = std::max(worst, (j - fd).cwiseAbs().maxCoeff());
  }
  return {worst <= kJacobianTol, std::to_string(kJacobianDraws) + " draws, max-norm " + fmt("%.2e", worst)};
}

Outcome eigenvalue_shift() {
  Outcome o{true, ""};
  for (const double db : {0.714, -0.714}) {
    hhdr::SystemParams p = hhdr::reference_params(db, 0.35);
    const double gs[2] = {0.01, 0.005};
    cplx coeff[2];
    for (int i = 0; i < 2; ++i) {
      p.g = gs[i];
      const auto ev = hhdr::full_eigenvalues(p).eigenvalues;
      const cplx unperturbed(p.spin_a.gamma2, p.spin_a.omega0);
      Eigen::Index best = 0;
      (ev.array() - unperturbed).abs().minCoeff(&best);
      coeff[i] = (ev(best) - unperturbed) / (gs[i] * gs[i]);
    }
    const cplx richardson = (4.0 * coeff[1] - coeff[0]) / 3.0;
    p.g = 1.0;
    const cplx target = -hhdr::upsilon_a(p);
    const double r = rel(richardson, target);
    o.pass = o.pass && r <= kShiftRelTol;
    o.detail += std::string(db > 0 ? "blue" : "red") + " rel dev " + fmt("%.2e", r) + (db > 0 ? "; " : "");
  }
  return o;
}

Outcome alpha_map_structure() {
  const auto t0 = std::chrono::steady_clock::now();
  const hhdr::RunConfig cfg;
  const hhdr::SweepGrid g = hhdr::sweep_alpha(cfg.alpha_sweep());
  int negative_blue = 0, negative_red = 0;
  for (std::size_t r = 0; r < g.rows(); ++r) {
    for (std::size_t c = 0; c < g.cols(); ++c) {
      if (g.at(r, c) < -1.0) ++(g.delta_axis[r] > 0.0 ? negative_blue : negative_red);
    }
  }
  int rows_checked = 0, rows_off = 0, red_checked = 0, red_bad = 0;
  for (std::size_t c = 0; c < g.cols(); ++c) {
    const double wb1 = g.omega_b1_axis[c];
    if (wb1 > kMaximizerMaxOmegaB1) continue;
    const double hh = std::sqrt(1.0 - 4.0 * wb1 * wb1);
    std::size_t best = 0;
    for (std::size_t r = 1; r < g.rows(); ++r) {
      if (std::abs(g.at(r, c)) > std::abs(g.at(best, c))) best = r;
    }
    ++rows_checked;
    if (std::abs(std::abs(g.delta_axis[best]) - hh) > kMaximizerWindow) ++rows_off;
    ++red_checked;
    if (!(hhdr::alpha_a(hhdr::reference_params(-hh, wb1), cfg.include_d0_term) > 0.0)) ++red_bad;
  }
  const auto lines = hhdr::contour_alpha(g, -1.0);
  const auto closed = std::count_if(lines.begin(), lines.end(), [](const hhdr::Polyline& l) { return l.closed; });
  const double s = seconds_since(t0);
  const bool pass = negative_blue > 0 && negative_red == 0 && rows_off == 0 && red_bad == 0 && closed >= 1 &&
                    g.nan_count == 0 && s < kMapSeconds;
  return {pass, "alpha<-1 cells blue " + std::to_string(negative_blue) + " red " + std::to_string(negative_red) +
                    "; maximizer off-branch " + std::to_string(rows_off) + "/" + std::to_string(rows_checked) +
                    "; red alpha<=0 " + std::to_string(red_bad) + "/" + std::to_string(red_checked) +
                    "; closed loops " + std::to_string(closed) + "; " + fmt("%.2f s", s)};
}

Outcome threshold_distance() {
  hhdr::PresetOverrides o;
  o.pz_a = hhdr::RunConfig{}.oisp_pz_a;
  const hhdr::SystemParams p = hhdr::nv_p1_preset(hhdr::RunConfig{}.b_field, hhdr::RunConfig{}.temperature, o);
  const hhdr::FeasibilityReport r = hhdr::feasibility_report(p);
  const double g = hhdr::dipolar_coupling(r.r_threshold);
  const double kp = hhdr::cooperativity(g, p.spin_a.gamma2, p.spin_b.gamma1, p.spin_b.gamma2) *
                    std::abs(r.p_a * r.p_b);
  const double nm = r.r_threshold * 1e9;
  return {std::abs(nm - kDistanceNm) <= kDistanceTolNm && std::abs(kp - 1.0) <= kCooperativityTol,
          "r_d " + fmt("%.4f nm", nm) + ", kappa|PaPb| - 1 = " + fmt("%.2e", kp - 1.0)};
}

struct SeoRun {
  hhdr::SeoEstimate est;
  double max_abs_pz = 0.0;
};

SeoRun seo_run(double delta_b) {
  const hhdr::SystemParams p = hhdr::reference_params(delta_b, 0.35);
  hhdr::IntegrationSpec s = hhdr::default_integration(p);
  s.initial_state = hhdr::seeded_initial_state(p, kSeoSeed);
  s.record_start = 0.8 * s.t_end;
  const hhdr::Trajectory tr = hhdr::integrate(p, s);
  return {hhdr::seo_amplitude(tr, p), tr.max_abs_pz};
}

Outcome time_domain_seo() {
  const auto t0 = std::chrono::steady_clock::now();
  const SeoRun blue = seo_run(0.714);
  const SeoRun red = seo_run(-0.714);
  const double s = seconds_since(t0);
  const double ratio = blue.est.amplitude / red.est.amplitude;
  const bool bounded = std::max(blue.max_abs_pz, red.max_abs_pz) <= 1.0 + kBoundednessSlack;
  const bool pass = ratio >= kSeoRatio && blue.est.oscillating && !red.est.oscillating &&
                    blue.est.envelope_drift < kSeoDrift && bounded && s < kSeoSeconds;
  return {pass, "ratio " + fmt("%.3g", ratio) + ", blue " + fmt("%.3e", blue.est.amplitude) + " (threshold " +
                    fmt("%.3e", blue.est.threshold) + ", drift " + fmt("%.2e", blue.est.envelope_drift) + "), red " +
                    fmt("%.3e", red.est.amplitude) + ", max|Pz| " +
                    fmt("%.6f", std::max(blue.max_abs_pz, red.max_abs_pz)) + ", " + fmt("%.1f s", s)};
}

double jaccard(const hhdr::SweepGrid& osc, const hhdr::SweepGrid& alpha, int& inter, int& uni) {
  inter = uni = 0;
  for (std::size_t i = 0; i < osc.values.size(); ++i) {
    const bool a = osc.values[i] == 1.0;
    const bool b = alpha.values[i] < -1.0;
    inter += a && b;
    uni += a || b;
  }
  return uni > 0 ? static_cast<double>(inter) / uni : 0.0;
}

Outcome seo_alpha_overlap() {
  const auto t0 = std::chrono::steady_clock::now();
  const hhdr::RunConfig cfg;
  const hhdr::SweepSpec spec = cfg.seo_sweep();
  hhdr::IntegrationSpec is = cfg.integration();
  is.record_stride = 1;
  const hhdr::SweepGrid amp = hhdr::sweep_amplitude(spec, is, cfg.tail_fraction);
  const hhdr::SweepGrid osc = hhdr::oscillation_mask(amp, spec);
  hhdr::SweepSpec aspec = spec;
  aspec.include_d0_term = false;
  const hhdr::SweepGrid alpha = hhdr::sweep_alpha(aspec);
  aspec.include_d0_term = true;
  const hhdr::SweepGrid alpha_d0 = hhdr::sweep_alpha(aspec);
  int i0 = 0, u0 = 0, i1 = 0, u1 = 0;
  const double j = jaccard(osc, alpha, i0, u0);
  const double j_d0 = jaccard(osc, alpha_d0, i1, u1);
  const double s = seconds_since(t0);
  return {j >= kJaccard && amp.nan_count == 0 && s < kOverlapSeconds,
          "Jaccard " + fmt("%.4f", j) + " (" + std::to_string(i0) + "/" + std::to_string(u0) +
              "), with D0 term " + fmt("%.4f", j_d0) + " (" + std::to_string(i1) + "/" + std::to_string(u1) +
              "), NaN cells " + std::to_string(amp.nan_count) + ", " + fmt("%.1f s", s)};
}

Outcome analytic_decay() {
  hhdr::SystemParams p = hhdr::reference_params(0.0, 0.0);
  p.g = 0.0;
  hhdr::IntegrationSpec s;
  s.t_end = 10.0;
  s.rel_tol = kDecayRelTol;
  s.abs_tol = kDecayRelTol * 1e-3;
  s.initial_state = hhdr::BlochState{{0.1, 0.0}, p.spin_a.pz_eq, {0.0, 0.0}, p.spin_b.pz_eq};
  const hhdr::Trajectory tr = hhdr::integrate(p, s);
  const cplx exact = 0.1 * std::exp(cplx(-p.spin_a.gamma2, p.spin_a.omega0) * 10.0);
  const double r = rel(tr.states.back().pa_plus, exact);
  return {r <= kDecayTolFactor * kDecayRelTol && tr.max_abs_pz <= 1.0 + kBoundednessSlack,
          "rel error " + fmt("%.2e", r) + " (tol 1e-8)"};
}

Outcome lme_suite() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  std::string d;

  std::size_t counts[3] = {};
  double ortho = 0.0;
  for (int dim = 2; dim <= 4; ++dim) {
    const hhdr::SuBasis b = hhdr::su_basis(dim);
    counts[dim - 2] = b.matrices.size();
    for (std::size_t i = 0; i < b.matrices.size(); ++i) {
      for (std::size_t k = 0; k < b.matrices.size(); ++k) {
        ortho = std::max(ortho, std::abs((b.matrices[i] * b.matrices[k]).trace() - (i == k ? 2.0 : 0.0)));
      }
    }
  }
  ok = ok && counts[0] == 3 && counts[1] == 8 && counts[2] == 15 && ortho <= kLmeBasisTol;
  d += "basis " + std::to_string(counts[0]) + "/" + std::to_string(counts[1]) + "/" + std::to_string(counts[2]) +
       " ortho " + fmt("%.1e", ortho);

  const double w0 = 1.3, gamma = 0.2;
  const hhdr::SuBasis b2 = hhdr::su_basis(2);
  const hhdr::LmeLinearForm deph =
      hhdr::build_linear_form({0.5 * w0 * b2.matrices[2], b2.matrices[2], gamma, 0.0}, b2);
  const Eigen::VectorXcd ev = hhdr::lme_stability_report(deph).eigenvalues;
  double eig_err = 0.0;
  for (const cplx want : {cplx(0.0, 0.0), cplx(-4 * gamma, w0), cplx(-4 * gamma, -w0)}) {
    eig_err = std::max(eig_err, (ev.array() - want).abs().minCoeff());
  }
  ok = ok && eig_err <= kLmeEigTol;
  d += "; dephasing " + fmt("%.1e", eig_err);

  const hhdr::SuBasis b3 = hhdr::su_basis(3);
  hhdr::LmeSystem unitary{hhdr::random_hermitian(3, 11), hhdr::random_hermitian(3, 12), 0.0, 0.0};
  const hhdr::LmeLinearForm fu = hhdr::build_linear_form(unitary, b3);
  Eigen::MatrixXcd rho0 = hhdr::random_hermitian(3, 13);
  rho0 = rho0 * rho0.adjoint() + 0.1 * Eigen::MatrixXcd::Identity(3, 3);
  rho0 /= rho0.trace();
  const Eigen::VectorXd k0 = hhdr::bloch_coordinates(rho0, b3);
  const Eigen::VectorXd k1 = hhdr::lme_propagate(fu, k0, 7.0);
  const double norm_err = std::abs(k1.norm() - k0.norm());
  ok = ok && norm_err <= kLmeNormTol;
  d += "; |k| " + fmt("%.1e", norm_err);

  hhdr::LmeSystem open{unitary.omega_h, unitary.q, 0.6, 0.4};
  const Eigen::MatrixXcd rho = hhdr::density_from_coordinates(
      hhdr::lme_propagate(hhdr::build_linear_form(open, b3), k0, 3.0), b3);
  const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  const double tr = std::abs(rho.trace() - 1.0);
  ok = ok && herm <= kLmeTraceTol && tr <= kLmeTraceTol;
  d += "; trace " + fmt("%.1e", tr) + " herm " + fmt("%.1e", herm);

  const hhdr::LmeCampaignResult c = hhdr::lme_random_campaign({2, 3, 4}, kLmeInstances, hhdr::RunConfig{}.seed);
  ok = ok && c.symmetric_bound_passes == kLmeInstances && c.worst_symmetric_margin <= kLmeBoundMargin;
  d += "; bound " + std::to_string(c.symmetric_bound_passes) + "/" + std::to_string(c.instances);

  double det_worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const hhdr::LmeSystem s{hhdr::random_hermitian(2, 500 + k), hhdr::random_hermitian(2, 700 + k), 1.0, 0.5};
    const Eigen::MatrixXd m = hhdr::build_linear_form(s, b2).m;
    det_worst = std::max(det_worst, std::abs(m.determinant()) / std::pow(m.norm(), 3));
  }
  ok = ok && det_worst <= kLmeDetTol;
  d += "; det M/|M|^3 " + fmt("%.1e", det_worst);

  const double s = seconds_since(t0);
  ok = ok && s < kLmeSeconds;
  return {ok, d + "; " + fmt("%.2f s", s)};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

Outcome cli_determinism() {
  const fs::path root = fs::path(HHDR_ACCEPTANCE_WORK_DIR);
  fs::remove_all(root);
  fs::create_directories(root);
  std::vector<std::string> grids;
  int failures = 0;
  for (const char* threads : {"1", "1", "8", "8"}) {
    const fs::path out = root / ("run" + std::to_string(grids.size()) + "_t" + threads);
    const std::string cmd = std::string("HHDR_THREADS=") + threads + " \"" HHDR_CLI_PATH "\" sweep-alpha --out \"" +
                            out.string() + "\" >/dev/null";
    const int rc = std::system(cmd.c_str());
    if (!WIFEXITED(rc) || WEXITSTATUS(rc) != 0) ++failures;
    grids.push_back(slurp(out / "alpha_grid.csv"));
  }
  const bool same = std::all_of(grids.begin(), grids.end(), [&](const std::string& g) { return g == grids[0]; });
  return {failures == 0 && same && !grids[0].empty(),
          "4 runs (threads 1,1,8,8), " + std::to_string(grids[0].size()) + " bytes, " +
              (same ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"chi_y closed form vs numeric inversion", chi_equivalence},
      {"Upsilon_a matrix/closed/normalized agreement", upsilon_agreement},
      {"Jacobian vs finite differences", jacobian_fidelity},
      {"eigenvalue shift vs -Upsilon_a", eigenvalue_shift},
      {"alpha map structure", alpha_map_structure},
      {"threshold distance", threshold_distance},
      {"time-domain SEO blue vs red", time_domain_seo},
      {"SEO map vs alpha<-1 overlap", seo_alpha_overlap},
      {"analytic decay", analytic_decay},
      {"LME suite", lme_suite},
      {"CLI determinism", cli_determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return std::min(failed, 100);
}
