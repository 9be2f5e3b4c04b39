#pragma once

// Linear master equation
//   d rho/dt = i[rho, Omega_H] - gamma_E [Q,[Q,rho]] - eta_E gamma_E [Q,[Q,Omega_H]]
// written in SU(d) Bloch coordinates rho = 1/d + k . lambda as
//   dk/dt = (M - G) k + k0.

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

namespace hhdr {

struct SuBasis {
  int dim = 0;
  /// d^2 - 1 Hermitian traceless generators with Tr(l_a l_b) = 2 delta_ab,
  /// ordered: symmetric pairs, antisymmetric pairs (each in lexicographic
  /// (row, col) order), then the diagonal ladder.
  std::vector<Eigen::MatrixXcd> matrices;
};

/// Generalized Gell-Mann basis for 2 <= d <= 12.
SuBasis su_basis(int d);

/// k_a = Tr(rho l_a) / 2. Rejects non-Hermitian or non-unit-trace rho (1e-10).
Eigen::VectorXd bloch_coordinates(const Eigen::MatrixXcd& rho, const SuBasis& basis);
Eigen::MatrixXcd density_from_coordinates(const Eigen::VectorXd& k, const SuBasis& basis);

struct LmeSystem {
  Eigen::MatrixXcd omega_h;  // Hamiltonian / hbar
  Eigen::MatrixXcd q;        // coupling to the environment
  double gamma_e = 0.0;
  double eta_e = 0.0;

  void validate() const;
};

struct LmeLinearForm {
  Eigen::MatrixXd m;      // antisymmetric
  Eigen::MatrixXd g_mat;  // symmetric positive semidefinite
  Eigen::VectorXd k0;

  Eigen::MatrixXd generator() const { return m - g_mat; }
};

LmeLinearForm build_linear_form(const LmeSystem& sys, const SuBasis& basis);

/// k(t) = e^{(M-G)t} k(0) + int_0^t e^{(M-G)(t-s)} k0 ds, evaluated as one
/// exponential of the augmented generator [[M-G, k0], [0, 0]].
Eigen::VectorXd lme_propagate(const LmeLinearForm& form, const Eigen::VectorXd& k_init, double t);

/// -(M-G)^{-1} k0, or the least-squares solution when M-G is singular and
/// k0 lies in its range. Throws DegeneracyError when no steady state exists.
Eigen::VectorXd lme_steady_state(const LmeLinearForm& form);

struct LmeStabilityReport {
  Eigen::VectorXcd eigenvalues;
  double max_real = 0.0;
  double lambda_min_sym_g = 0.0;
  double min_diag_g = 0.0;
  /// max Re xi <= -lambda_min(sym G) + 1e-9
  bool symmetric_bound_holds = false;
  /// max Re xi <= -min diag(G) + 1e-9 (not guaranteed in general)
  bool diagonal_bound_holds = false;
};

LmeStabilityReport lme_stability_report(const LmeLinearForm& form);

struct DampingDecomposition {
  Eigen::MatrixXd a;  // antisymmetric
  Eigen::MatrixXd t;  // strictly upper triangular
  Eigen::MatrixXd d;  // diagonal
};

/// G = A + T + D with A_nm = G_nm (n > m), A_nm = -G_mn (n < m),
/// T_nm = G_nm + G_mn (n < m), D = diag(G).
DampingDecomposition decompose_damping(const Eigen::MatrixXd& g_mat);

/// Smallest eigenvalue of the density matrix rebuilt from k.
double min_density_eigenvalue(const Eigen::VectorXd& k, const SuBasis& basis);

/// Random Hermitian d x d matrix: independent standard normal real and
/// imaginary parts, symmetrized.
Eigen::MatrixXcd random_hermitian(int d, std::uint64_t seed);

/// Per-instance seed derived from a master seed (splitmix64).
std::uint64_t instance_seed(std::uint64_t master, std::uint64_t index);

struct LmeCampaignResult {
  int instances = 0;
  int symmetric_bound_passes = 0;
  int diagonal_bound_passes = 0;
  /// Largest max Re xi + lambda_min(sym G) seen (<= 1e-9 when the bound holds).
  double worst_symmetric_margin = 0.0;
};

/// Random instances cycling d over `dims`; gamma_E = 1, eta_E drawn in
/// [0, 1). Instances run in parallel with per-instance seeds; the result is
/// independent of the thread count.
LmeCampaignResult lme_random_campaign(const std::vector<int>& dims, int instances,
                                      std::uint64_t seed, int threads = 0);
LmeCampaignResult lme_random_campaign_serial(const std::vector<int>& dims, int instances,
                                             std::uint64_t seed);

}  // namespace hhdr
