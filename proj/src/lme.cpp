#include "hhdr/lme.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include <Eigen/Eigenvalues>
#include <unsupported/Eigen/MatrixFunctions>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "hhdr/errors.hpp"

namespace hhdr {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXd;
using cplx = std::complex<double>;

constexpr cplx I{0.0, 1.0};

MatrixXcd comm(const MatrixXcd& a, const MatrixXcd& b) { return a * b - b * a; }

bool hermitian(const MatrixXcd& m, double tol) {
  return m.rows() == m.cols() && (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

struct InstanceOutcome {
  bool sym_ok = false;
  bool diag_ok = false;
  double margin = 0.0;
};

InstanceOutcome run_instance(const std::vector<int>& dims, std::uint64_t master, int index) {
  const std::uint64_t s = instance_seed(master, static_cast<std::uint64_t>(index));
  const int d = dims[static_cast<std::size_t>(index) % dims.size()];
  std::mt19937_64 rng(s);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  LmeSystem sys;
  sys.omega_h = random_hermitian(d, rng());
  sys.q = random_hermitian(d, rng());
  sys.gamma_e = 1.0;
  sys.eta_e = unit(rng);
  const LmeStabilityReport rep = lme_stability_report(build_linear_form(sys, su_basis(d)));
  return {rep.symmetric_bound_holds, rep.diagonal_bound_holds,
          rep.max_real + rep.lambda_min_sym_g};
}

LmeCampaignResult tally(const std::vector<InstanceOutcome>& out) {
  LmeCampaignResult r;
  r.instances = static_cast<int>(out.size());
  r.worst_symmetric_margin = out.empty() ? 0.0 : out.front().margin;
  for (const auto& o : out) {
    r.symmetric_bound_passes += o.sym_ok;
    r.diagonal_bound_passes += o.diag_ok;
    r.worst_symmetric_margin = std::max(r.worst_symmetric_margin, o.margin);
  }
  return r;
}

}  // namespace

SuBasis su_basis(int d) {
  if (d < 2 || d > 12) throw InvalidInput("basis dimension must lie in [2, 12]");
  SuBasis b;
  b.dim = d;
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      MatrixXcd m = MatrixXcd::Zero(d, d);
      m(j, k) = 1.0;
      m(k, j) = 1.0;
      b.matrices.push_back(std::move(m));
    }
  }
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      MatrixXcd m = MatrixXcd::Zero(d, d);
      m(j, k) = -I;
      m(k, j) = I;
      b.matrices.push_back(std::move(m));
    }
  }
  for (int l = 1; l < d; ++l) {
    MatrixXcd m = MatrixXcd::Zero(d, d);
    const double s = std::sqrt(2.0 / (l * (l + 1.0)));
    for (int j = 0; j < l; ++j) m(j, j) = s;
    m(l, l) = -s * l;
    b.matrices.push_back(std::move(m));
  }
  return b;
}

VectorXd bloch_coordinates(const MatrixXcd& rho, const SuBasis& basis) {
  if (rho.rows() != basis.dim || rho.cols() != basis.dim) {
    throw InvalidInput("density matrix dimension does not match the basis");
  }
  if (!hermitian(rho, 1e-10)) throw InvalidInput("density matrix is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > 1e-10) throw InvalidInput("density matrix must have unit trace");
  VectorXd k(static_cast<Eigen::Index>(basis.matrices.size()));
  for (std::size_t a = 0; a < basis.matrices.size(); ++a) {
    k(static_cast<Eigen::Index>(a)) = 0.5 * (rho * basis.matrices[a]).trace().real();
  }
  return k;
}

MatrixXcd density_from_coordinates(const VectorXd& k, const SuBasis& basis) {
  if (k.size() != static_cast<Eigen::Index>(basis.matrices.size())) {
    throw InvalidInput("coordinate vector length does not match the basis");
  }
  MatrixXcd rho = MatrixXcd::Identity(basis.dim, basis.dim) / static_cast<double>(basis.dim);
  for (std::size_t a = 0; a < basis.matrices.size(); ++a) {
    rho += k(static_cast<Eigen::Index>(a)) * basis.matrices[a];
  }
  return rho;
}

void LmeSystem::validate() const {
  if (omega_h.rows() != omega_h.cols() || q.rows() != q.cols() || q.rows() != omega_h.rows()) {
    throw InvalidInput("omega_h and q must be square matrices of equal size");
  }
  if (!hermitian(omega_h, 1e-12)) throw InvalidInput("omega_h is not Hermitian");
  if (!hermitian(q, 1e-12)) throw InvalidInput("q is not Hermitian");
  if (!(gamma_e >= 0.0) || !std::isfinite(gamma_e)) throw InvalidInput("gamma_e must be >= 0");
  if (!(eta_e >= 0.0) || !std::isfinite(eta_e)) throw InvalidInput("eta_e must be >= 0");
}

LmeLinearForm build_linear_form(const LmeSystem& sys, const SuBasis& basis) {
  sys.validate();
  if (sys.omega_h.rows() != basis.dim) throw InvalidInput("system dimension does not match the basis");
  const auto n = static_cast<Eigen::Index>(basis.matrices.size());
  const auto& lam = basis.matrices;

  std::vector<MatrixXcd> ql(lam.size());
  for (std::size_t a = 0; a < lam.size(); ++a) ql[a] = comm(sys.q, lam[a]);
  const MatrixXcd qq_omega = comm(sys.q, comm(sys.q, sys.omega_h));

  LmeLinearForm f;
  f.m = MatrixXd::Zero(n, n);
  f.g_mat = MatrixXd::Zero(n, n);
  f.k0 = VectorXd::Zero(n);
  for (Eigen::Index a = 0; a < n; ++a) {
    const auto ua = static_cast<std::size_t>(a);
    for (Eigen::Index b = 0; b < n; ++b) {
      const auto ub = static_cast<std::size_t>(b);
      f.m(a, b) = (0.5 * I * (sys.omega_h * comm(lam[ua], lam[ub])).trace()).real();
      f.g_mat(a, b) = (0.5 * sys.gamma_e) * (-(ql[ub] * ql[ua]).trace()).real();
    }
    f.k0(a) = (-0.5 * sys.eta_e * sys.gamma_e) * (qq_omega * lam[ua]).trace().real();
  }
  return f;
}

VectorXd lme_propagate(const LmeLinearForm& form, const VectorXd& k_init, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) throw InvalidInput("propagation time must be finite and >= 0");
  const Eigen::Index n = form.m.rows();
  if (k_init.size() != n) throw InvalidInput("initial vector length does not match the form");
  if (t == 0.0) return k_init;
  MatrixXd aug = MatrixXd::Zero(n + 1, n + 1);
  aug.topLeftCorner(n, n) = form.generator() * t;
  aug.topRightCorner(n, 1) = form.k0 * t;
  const MatrixXd e = aug.exp();
  return e.topLeftCorner(n, n) * k_init + e.topRightCorner(n, 1);
}

VectorXd lme_steady_state(const LmeLinearForm& form) {
  const MatrixXd a = form.generator();
  const Eigen::FullPivLU<MatrixXd> lu(a);
  if (lu.isInvertible()) return -lu.solve(form.k0);
  const Eigen::CompleteOrthogonalDecomposition<MatrixXd> cod(a);
  const VectorXd x = -cod.solve(form.k0);
  const double residual = (a * x + form.k0).norm();
  const double scale = std::max(1.0, form.k0.norm());
  if (residual > 1e-9 * scale) {
    throw DegeneracyError("M - G is singular and k0 lies outside its range", residual);
  }
  return x;
}

LmeStabilityReport lme_stability_report(const LmeLinearForm& form) {
  LmeStabilityReport r;
  const Eigen::EigenSolver<MatrixXd> es(form.generator(), false);
  if (es.info() != Eigen::Success) throw NumericError("eigenvalue solver failed");
  r.eigenvalues = es.eigenvalues();
  r.max_real = r.eigenvalues.real().maxCoeff();

  const MatrixXd sym = 0.5 * (form.g_mat + form.g_mat.transpose());
  const Eigen::SelfAdjointEigenSolver<MatrixXd> ss(sym, Eigen::EigenvaluesOnly);
  r.lambda_min_sym_g = ss.eigenvalues().minCoeff();
  r.min_diag_g = form.g_mat.diagonal().minCoeff();
  r.symmetric_bound_holds = r.max_real <= -r.lambda_min_sym_g + 1e-9;
  r.diagonal_bound_holds = r.max_real <= -r.min_diag_g + 1e-9;
  return r;
}

DampingDecomposition decompose_damping(const MatrixXd& g_mat) {
  if (g_mat.rows() != g_mat.cols()) throw InvalidInput("damping matrix must be square");
  const Eigen::Index n = g_mat.rows();
  DampingDecomposition dd{MatrixXd::Zero(n, n), MatrixXd::Zero(n, n), MatrixXd::Zero(n, n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    dd.d(i, i) = g_mat(i, i);
    for (Eigen::Index j = 0; j < i; ++j) {
      dd.a(i, j) = g_mat(i, j);
      dd.a(j, i) = -g_mat(i, j);
      dd.t(j, i) = g_mat(j, i) + g_mat(i, j);
    }
  }
  return dd;
}

double min_density_eigenvalue(const VectorXd& k, const SuBasis& basis) {
  const MatrixXcd rho = density_from_coordinates(k, basis);
  const Eigen::SelfAdjointEigenSolver<MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

MatrixXcd random_hermitian(int d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(i, j) = cplx(re, im);
    }
  }
  return 0.5 * (m + m.adjoint());
}

std::uint64_t instance_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

LmeCampaignResult lme_random_campaign(const std::vector<int>& dims, int instances,
                                      std::uint64_t seed, int threads) {
  if (dims.empty() || instances < 0) throw InvalidInput("campaign needs dimensions and instances >= 0");
  std::vector<InstanceOutcome> out(static_cast<std::size_t>(instances));
#ifdef _OPENMP
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nt)
#endif
  for (int i = 0; i < instances; ++i) out[static_cast<std::size_t>(i)] = run_instance(dims, seed, i);
  (void)threads;
  return tally(out);
}

LmeCampaignResult lme_random_campaign_serial(const std::vector<int>& dims, int instances,
                                             std::uint64_t seed) {
  if (dims.empty() || instances < 0) throw InvalidInput("campaign needs dimensions and instances >= 0");
  std::vector<InstanceOutcome> out;
  out.reserve(static_cast<std::size_t>(instances));
  for (int i = 0; i < instances; ++i) out.push_back(run_instance(dims, seed, i));
  return tally(out);
}

}  // namespace hhdr
