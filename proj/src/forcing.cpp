#include "mildsol/forcing.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace mildsol {

double apply_nonlinearity(Nonlinearity nl, double x) {
  switch (nl) {
    case Nonlinearity::zero:
      return 0.0;
    case Nonlinearity::identity:
      return x;
    case Nonlinearity::sine:
      return std::sin(x);
  }
  throw std::logic_error("apply_nonlinearity: unknown tag");
}

double nonlinearity_lipschitz(Nonlinearity nl) {
  return nl == Nonlinearity::zero ? 0.0 : 1.0;
}

double GrowthBound::operator()(double xi) const {
  if (xi < 0.0) throw std::domain_error("GrowthBound: xi must be >= 0");
  return gamma0 + gamma1 * std::pow(xi, theta);
}

double AAAForcing::aa_factor(double t) const {
  double s = 0.0;
  for (const TrigTerm& term : aa_multipliers)
    s += term.amplitude * std::cos(term.frequency * t);
  return s;
}

AAAForcing make_example1_forcing(double beta) {
  AAAForcing f;
  f.aa_multipliers = {{beta, 1.0}, {beta, std::sqrt(2.0)}};
  f.decay_scale = beta;
  f.decay_nonlinearity = Nonlinearity::sine;
  f.memory_coupling = Nonlinearity::sine;
  // Term-wise: 2|beta| (recurrent) + |beta| (decay) state Lipschitz, 1 for
  // the memory argument; the (H2) record takes the larger slot.
  f.lipschitz_L = std::max(3.0 * std::abs(beta), 1.0);
  f.uniform_bound_W = GrowthBound{1.0 + std::abs(beta), 2.0 * std::abs(beta),
                                  1.0};
  return f;
}

Eigen::VectorXd eval_forcing(const AAAForcing& f, double t,
                             const Eigen::VectorXd& u,
                             const Eigen::VectorXd& Ku) {
  if (u.size() != Ku.size())
    throw std::invalid_argument("eval_forcing: u/Ku size mismatch");
  const double aa = f.aa_factor(t);
  double drive = 0.0;
  for (const AAAForcing::TrigTerm& term : f.additive_drive)
    drive += term.amplitude * std::cos(term.frequency * t);
  const double env = f.decay_scale * std::exp(-std::abs(t));
  Eigen::VectorXd out(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i)
    out(i) = aa * u(i) + drive +
             env * apply_nonlinearity(f.decay_nonlinearity, u(i)) +
             apply_nonlinearity(f.memory_coupling, Ku(i));
  return out;
}

double estimate_lipschitz(const AAAForcing& f, double radius, int samples,
                          int dim, std::uint64_t seed) {
  if (!(radius > 0.0) || samples < 1 || dim < 1)
    throw std::invalid_argument("estimate_lipschitz: bad parameters");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ball(-radius, radius);
  std::uniform_real_distribution<double> times(-50.0, 50.0);
  auto draw = [&](Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = ball(rng);
  };
  Eigen::VectorXd u(dim), v(dim), p(dim), q(dim);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    const double t = times(rng);
    draw(u);
    draw(v);
    draw(p);
    draw(q);
    const double den = (u - v).norm() + (p - q).norm();
    if (den < 1e-12) continue;
    const double num =
        (eval_forcing(f, t, u, p) - eval_forcing(f, t, v, q)).norm();
    worst = std::max(worst, num / den);
  }
  return worst;
}

Eigen::VectorXd point_delay_eval(const Path& u, double t, double tau) {
  if (tau < 0.0) throw std::domain_error("point_delay_eval: tau must be >= 0");
  return u.interpolate(t - tau);
}

SineCollocation::SineCollocation(Eigen::Index n_modes, Eigen::Index n_points) {
  if (n_modes < 1)
    throw std::invalid_argument("SineCollocation: n_modes >= 1");
  if (n_points < 2 * n_modes)
    throw std::invalid_argument(
        "SineCollocation: need n_points >= 2*n_modes to resolve the basis");
  const double h = M_PI / static_cast<double>(n_points + 1);
  const double amp = std::sqrt(2.0 / M_PI);
  inverse_.resize(n_points, n_modes);
  for (Eigen::Index m = 0; m < n_points; ++m)
    for (Eigen::Index k = 0; k < n_modes; ++k)
      inverse_(m, k) =
          amp * std::sin(static_cast<double>(k + 1) * static_cast<double>(m + 1) * h);
  // Discrete orthogonality sum_m sin(k x_m) sin(l x_m) = (n_points+1)/2 d_kl
  // makes the scaled transpose an exact left inverse on the mode span; the
  // scale absorbs the amp^2 = 2/pi basis normalization.
  forward_ = (M_PI / static_cast<double>(n_points + 1)) * inverse_.transpose();
}

Eigen::VectorXd SineCollocation::to_values(const Eigen::VectorXd& coeffs) const {
  if (coeffs.size() != n_modes())
    throw std::invalid_argument("SineCollocation::to_values: size mismatch");
  return inverse_ * coeffs;
}

Eigen::VectorXd SineCollocation::to_coeffs(const Eigen::VectorXd& values) const {
  if (values.size() != n_points())
    throw std::invalid_argument("SineCollocation::to_coeffs: size mismatch");
  return forward_ * values;
}

Eigen::VectorXd eval_forcing_spectral(const AAAForcing& f,
                                      const SineCollocation* colloc, double t,
                                      const Eigen::VectorXd& u_coeffs,
                                      const Eigen::VectorXd& Ku_coeffs) {
  if (colloc == nullptr) return eval_forcing(f, t, u_coeffs, Ku_coeffs);
  const Eigen::VectorXd fu = eval_forcing(
      f, t, colloc->to_values(u_coeffs), colloc->to_values(Ku_coeffs));
  return colloc->to_coeffs(fu);
}

}  // namespace mildsol
