#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace mildsol {

/// Sector data of a sectorial operator: resolvent bound M outside omega + S_theta.
struct SectorType {
  double omega = 0.0;
  double theta = 0.0;
  double M = 1.0;

  SectorType() = default;
  SectorType(double omega_, double theta_, double M_)
      : omega(omega_), theta(theta_), M(M_) {
    if (!(M > 0.0)) throw std::invalid_argument("SectorType: M must be > 0");
    if (theta < 0.0 || theta >= 1.5707963267948966)
      throw std::invalid_argument("SectorType: theta must lie in [0, pi/2)");
  }

  /// Solver-facing constructor: the decay theory needs negative type.
  static SectorType negative_type(double omega_, double theta_, double M_) {
    if (!(omega_ < 0.0))
      throw std::invalid_argument("SectorType: solver requires omega < 0");
    return SectorType(omega_, theta_, M_);
  }
};

/// Empirical constant for the algebraic decay bound |E_a(mu t^a)| <= c_est/(1+|mu|t^a).
struct DecayCertificate {
  double alpha = 0.0;
  double mu = 0.0;
  double c_est = 0.0;
  double t_max = 0.0;
  int grid_points = 0;
};

struct MlResult {
  std::complex<double> value;
  enum class Regime { taylor, asymptotic } regime = Regime::taylor;
  /// |taylor - asymptotic| when both regimes were evaluated (crossover band),
  /// negative otherwise.
  double crossover_discrepancy = -1.0;
};

/// E_alpha(z) = sum z^k / Gamma(alpha k + 1), alpha in (0, 2].
/// Taylor summation in extended precision for moderate |z|^(1/alpha);
/// exponential-plus-algebraic asymptotics beyond.
MlResult ml_eval_detail(double alpha, std::complex<double> z);
std::complex<double> ml_eval(double alpha, std::complex<double> z);
double ml_eval(double alpha, double z);

struct ContourParams {
  int n_nodes = 0;        // 0: chosen from the geometry
  double sigma_scale = 4.0;  // contour scale sigma = sigma_scale / t (clamped)
  double delta = -1.0;       // asymptotic half-angle offset; < 0: auto
};

/// Laplace-inversion oracle: (1/2 pi i) Int_gamma e^{lambda t} lambda^{alpha-1}
/// / (lambda^alpha - mu) dlambda along a hyperbolic contour. Independent of
/// ml_eval; equals E_alpha(mu t^alpha) for mu <= 0, t > 0.
std::complex<double> contour_eval(double alpha, double mu, double t,
                                  const ContourParams& params = {});

/// Scalar symbol of the resolvent family on one mode: E_alpha(mu t^alpha),
/// exactly 1 at t = 0. Requires alpha in (1,2), mu <= 0, t >= 0.
double resolvent_symbol(double alpha, double mu, double t);

/// Maximize (1+|mu|t^alpha)|E_alpha(mu t^alpha)| over a log-spaced grid on
/// (0, t_max]. Requires mu < 0 and |mu| t_max^alpha >= 1e3.
DecayCertificate decay_certificate(double alpha, double mu, double t_max,
                                   int n_samples);

/// Closed form of Int_0^inf dt/(1+|omega|t^alpha) for alpha in (1,2):
/// |omega|^(-1/alpha) * pi / (alpha sin(pi/alpha)).
double kernel_integral_identity(double alpha, double omega);

/// Upper tail Int_T^inf ds/(1+|omega|s^alpha); exact alternating series when
/// |omega|T^alpha is large, identity minus quadrature otherwise.
double cuesta_kernel_tail(double alpha, double omega, double T);

}  // namespace mildsol
