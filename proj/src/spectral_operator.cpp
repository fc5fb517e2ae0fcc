#include "mildsol/spectral_operator.hpp"

#include <cmath>

namespace mildsol {

SpectralOperator::SpectralOperator(Eigen::VectorXd eigs, BasisTag tag,
                                   SectorType sec)
    : eigenvalues(std::move(eigs)), basis_tag(tag), sector(sec) {
  if (eigenvalues.size() < 1)
    throw std::invalid_argument("SpectralOperator: need at least one mode");
  for (Eigen::Index k = 1; k < eigenvalues.size(); ++k)
    if (!(eigenvalues(k) < eigenvalues(k - 1)))
      throw std::invalid_argument(
          "SpectralOperator: eigenvalues must strictly decrease");
  if (eigenvalues(0) > sector.omega + 1e-12)
    throw std::invalid_argument(
        "SpectralOperator: top eigenvalue exceeds sector type omega");
}

SpectralOperator make_dirichlet_laplacian(double mu_shift, Eigen::Index n_modes,
                                          double theta, double M) {
  if (!(mu_shift > 0.0))
    throw std::domain_error("make_dirichlet_laplacian: mu_shift must be > 0");
  if (n_modes < 1)
    throw std::invalid_argument("make_dirichlet_laplacian: n_modes >= 1");
  Eigen::VectorXd eigs(n_modes);
  for (Eigen::Index k = 0; k < n_modes; ++k) {
    const double kk = static_cast<double>(k + 1);
    eigs(k) = -kk * kk - mu_shift;
  }
  const SectorType sec =
      SectorType::negative_type(-1.0 - mu_shift, theta, M);
  return SpectralOperator(std::move(eigs), BasisTag::dirichlet_sine_on_0_pi,
                          sec);
}

SectorialReport verify_sectorial(const SpectralOperator& op, double omega,
                                 double theta, double M, int sample_count) {
  if (sample_count < 1)
    throw std::invalid_argument("verify_sectorial: sample_count >= 1");
  if (theta < 0.0 || theta >= M_PI / 2.0)
    throw std::invalid_argument("verify_sectorial: theta must lie in [0, pi/2)");

  // lambda = omega + r e^{i phi} with |phi| in (theta, pi]: outside the sector
  // omega + S_theta (whose interior is |arg(-(lambda-omega))| < theta, i.e.
  // |arg(lambda-omega)| > pi - theta). Sample the complementary angles.
  SectorialReport rep;
  const int n_angles = 12;
  const int n_radii = std::max(1, sample_count / n_angles + 1);
  for (int ia = 0; ia < n_angles; ++ia) {
    // angles spread over (-(pi-theta), pi-theta), avoiding the sector
    const double span = M_PI - theta - 1e-3;
    const double phi = -span + 2.0 * span * ia / (n_angles - 1);
    for (int ir = 0; ir < n_radii; ++ir) {
      double r = 1e-2 * std::pow(1e6, static_cast<double>(ir) /
                                          std::max(1, n_radii - 1));
      std::complex<double> lambda =
          omega + std::polar(r, phi);
      // retry with perturbed radius if lambda collides with an eigenvalue
      int guard = 0;
      auto resolvent_norm = [&](std::complex<double> l, bool& collision) {
        double worst = 0.0;
        collision = false;
        for (Eigen::Index k = 0; k < op.n_modes(); ++k) {
          const double d = std::abs(l - std::complex<double>(op.eigenvalues(k), 0));
          if (d < 1e-13) {
            collision = true;
            return 0.0;
          }
          worst = std::max(worst, 1.0 / d);
        }
        return worst;
      };
      bool collision = false;
      double rn = resolvent_norm(lambda, collision);
      while (collision && guard++ < 8) {
        r *= 1.0 + 1e-6;
        lambda = omega + std::polar(r, phi);
        rn = resolvent_norm(lambda, collision);
      }
      if (collision)
        throw std::runtime_error(
            "verify_sectorial: persistent eigenvalue collision");
      const double ratio = rn * std::abs(lambda - omega) / M;
      ++rep.samples_checked;
      if (ratio > rep.worst_ratio) {
        rep.worst_ratio = ratio;
        rep.witness = lambda;
      }
    }
  }
  rep.ok = rep.worst_ratio <= 1.0 + 1e-12;
  return rep;
}

Eigen::VectorXd apply_family(const SpectralOperator& op, double alpha, double t,
                             const Eigen::VectorXd& x) {
  if (t < 0.0) throw std::domain_error("apply_family: t must be >= 0");
  if (x.size() != op.n_modes())
    throw std::invalid_argument("apply_family: state dimension mismatch");
  if (t == 0.0) return x;
  Eigen::VectorXd out(x.size());
  for (Eigen::Index k = 0; k < x.size(); ++k)
    out(k) = resolvent_symbol(alpha, op.eigenvalues(k), t) * x(k);
  return out;
}

double operator_decay_constant(const SpectralOperator& op, double alpha,
                               double t_max, int n_samples) {
  double cm = 0.0;
  for (Eigen::Index k = 0; k < op.n_modes(); ++k) {
    if (!(op.eigenvalues(k) < 0.0))
      throw std::domain_error(
          "operator_decay_constant: all eigenvalues must be < 0");
    // |E_a(mu t^a)| <= c_k/(1+|mu|t^a) <= c_k/(1+|omega|t^a) since
    // |mu_k| >= |omega|; the mode maximum is the uniform CM.
    const DecayCertificate cert =
        decay_certificate(alpha, op.eigenvalues(k), t_max, n_samples);
    cm = std::max(cm, cert.c_est);
  }
  return cm;
}

}  // namespace mildsol
