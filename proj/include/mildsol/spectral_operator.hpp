#pragma once

#include "mildsol/mlf.hpp"
#include "mildsol/time_grid.hpp"

#include <complex>

namespace mildsol {

enum class BasisTag { dirichlet_sine_on_0_pi, abstract_diagonal };

/// Diagonal sectorial operator given by a strictly decreasing list of real
/// eigenvalues. Solver-facing instances require all eigenvalues < 0.
struct SpectralOperator {
  Eigen::VectorXd eigenvalues;  // mu_1 > mu_2 > ...
  BasisTag basis_tag = BasisTag::abstract_diagonal;
  SectorType sector;

  SpectralOperator() = default;
  SpectralOperator(Eigen::VectorXd eigs, BasisTag tag, SectorType sec);

  Eigen::Index n_modes() const { return eigenvalues.size(); }
};

/// A w = w'' - mu_shift w on (0, pi) with Dirichlet ends: eigenvalues
/// -k^2 - mu_shift, sine basis. Sector type is the spectral top -1 - mu_shift
/// (the conservative choice; see verify_sectorial for the bound constant).
SpectralOperator make_dirichlet_laplacian(double mu_shift, Eigen::Index n_modes,
                                          double theta = 0.5235987755982988,
                                          double M = 2.0);

struct SectorialReport {
  bool ok = false;
  double worst_ratio = 0.0;           // max ||(l-A)^-1|| |l-omega| / M
  std::complex<double> witness{0, 0};  // sample attaining worst_ratio
  int samples_checked = 0;
};

/// Samples lambda outside omega + S_theta (log-spaced radii on rays) and
/// checks ||(lambda-A)^{-1}|| <= M/|lambda-omega|; diagonal, so the norm is
/// max_k 1/|lambda - mu_k|.
SectorialReport verify_sectorial(const SpectralOperator& op, double omega,
                                 double theta, double M, int sample_count);

/// S_alpha(t) x, realized modewise as E_alpha(mu_k t^alpha) x_k.
Eigen::VectorXd apply_family(const SpectralOperator& op, double alpha, double t,
                             const Eigen::VectorXd& x);

/// Uniform-in-mode decay constant: CM = max_k c_est,k with per-mode Cuesta
/// certificates; since |mu_k| >= |omega| this dominates CM/(1+|omega|t^alpha).
double operator_decay_constant(const SpectralOperator& op, double alpha,
                               double t_max, int n_samples = 2000);

}  // namespace mildsol
