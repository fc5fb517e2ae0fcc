#pragma once

#include "mildsol/spectral_operator.hpp"
#include "mildsol/time_grid.hpp"

#include <cstdint>
#include <vector>

namespace mildsol {

/// Pointwise nonlinearity applied on collocation values.
enum class Nonlinearity : std::uint8_t { zero, identity, sine };

double apply_nonlinearity(Nonlinearity nl, double x);
/// Lipschitz constant of the tag (0, 1, 1).
double nonlinearity_lipschitz(Nonlinearity nl);

/// Nondecreasing growth majorant W(xi) = gamma0 + gamma1 * xi^theta.
struct GrowthBound {
  double gamma0 = 0.0;
  double gamma1 = 0.0;
  double theta = 1.0;

  double operator()(double xi) const;
};

/// Asymptotically almost automorphic forcing
///   f(t, u, phi) = u * sum_i a_i cos(nu_i t)            (recurrent part)
///                + sum_i b_i cos(nu_i t)                (additive drive)
///                + decay_scale * e^{-|t|} * g_d(u)      (vanishing part)
///                + g_m(phi)                             (memory coupling)
/// acting pointwise on collocation values; phi is Ku (or a delayed state).
struct AAAForcing {
  struct TrigTerm {
    double amplitude = 0.0;
    double frequency = 0.0;
  };
  std::vector<TrigTerm> aa_multipliers;  // state multiplier a_i cos(nu_i t)
  std::vector<TrigTerm> additive_drive;  // state-independent b_i cos(nu_i t)
  double decay_scale = 0.0;              // envelope e^{-|t|}
  Nonlinearity decay_nonlinearity = Nonlinearity::zero;
  Nonlinearity memory_coupling = Nonlinearity::zero;
  double lipschitz_L = 0.0;  // recorded L_f of (H2)
  GrowthBound uniform_bound_W;

  /// Recurrent multiplier sum_i a_i cos(nu_i t).
  double aa_factor(double t) const;
};

/// The model forcing
///   f(t, w, Kw) = beta w (cos t + cos sqrt2 t) + beta e^{-|t|} sin w + sin(Kw)
/// with the term-wise Lipschitz record L_f = max(3|beta|, 1).
AAAForcing make_example1_forcing(double beta);

/// Pointwise evaluation on matching shapes (collocation values or scalars).
Eigen::VectorXd eval_forcing(const AAAForcing& f, double t,
                             const Eigen::VectorXd& u,
                             const Eigen::VectorXd& Ku);

/// Empirical Lipschitz constant: max over seeded random pairs in the radius
/// ball and sampled t of ||f(t,u,phi)-f(t,v,psi)|| / (||u-v|| + ||phi-psi||).
double estimate_lipschitz(const AAAForcing& f, double radius, int samples,
                          int dim = 1, std::uint64_t seed = 12345);

/// Linear interpolation of u at t - tau (tau >= 0).
Eigen::VectorXd point_delay_eval(const Path& u, double t, double tau);

/// Sine collocation bridge between mode coefficients and point values on
/// x_m = m pi/(n_x+1), basis z_k(x) = sqrt(2/pi) sin(k x).
class SineCollocation {
 public:
  SineCollocation(Eigen::Index n_modes, Eigen::Index n_points);

  Eigen::Index n_modes() const { return forward_.rows(); }
  Eigen::Index n_points() const { return forward_.cols(); }

  Eigen::VectorXd to_values(const Eigen::VectorXd& coeffs) const;
  Eigen::VectorXd to_coeffs(const Eigen::VectorXd& values) const;

 private:
  Eigen::MatrixXd inverse_;  // n_points x n_modes
  Eigen::MatrixXd forward_;  // n_modes x n_points
};

/// Forcing on mode coefficients: transform to collocation values, apply the
/// pointwise forcing, transform back. For abstract_diagonal states the
/// coefficients themselves are the pointwise values.
Eigen::VectorXd eval_forcing_spectral(const AAAForcing& f,
                                      const SineCollocation* colloc, double t,
                                      const Eigen::VectorXd& u_coeffs,
                                      const Eigen::VectorXd& Ku_coeffs);

}  // namespace mildsol
