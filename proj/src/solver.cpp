#include "mildsol/solver.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>

namespace mildsol {

namespace {

void require_open_order(double alpha, const char* where) {
  if (!(alpha > 1.0) || !(alpha < 2.0))
    throw std::domain_error(std::string(where) +
                            ": alpha must lie strictly in (1, 2)");
}

}  // namespace

ContractionReport contraction_constant(double CM, double alpha, double omega,
                                       double L_f, double k_l1) {
  if (!(CM > 0.0))
    throw std::domain_error("contraction_constant: CM must be > 0");
  require_open_order(alpha, "contraction_constant");
  if (!(omega < 0.0))
    throw std::domain_error("contraction_constant: omega must be < 0");
  if (L_f < 0.0 || k_l1 < 0.0)
    throw std::domain_error("contraction_constant: L_f, k_l1 must be >= 0");
  ContractionReport rep;
  rep.factors = {CM, omega, alpha, L_f, k_l1};
  rep.Lambda = CM * kernel_integral_identity(alpha, omega) * L_f * (1.0 + k_l1);
  rep.verdict = rep.Lambda < 1.0 ? ContractionReport::Verdict::contractive
                                 : ContractionReport::Verdict::not_contractive;
  return rep;
}

ContractionReport contraction_constant_example1(double CM, double alpha,
                                                double mu, double beta) {
  if (!(mu < 0.0))
    throw std::domain_error("contraction_constant_example1: mu must be < 0");
  const double L_f = std::max(3.0 * std::abs(beta), 1.0);
  ContractionReport rep = contraction_constant(CM, alpha, mu, L_f, 1.0);
  const double threshold = alpha * std::sin(M_PI / alpha) /
                           (3.0 * CM * std::pow(std::abs(mu), -1.0 / alpha) *
                            M_PI);
  rep.example1_condition_value = (std::abs(beta) + 1.0) / threshold;
  return rep;
}

PicardResult picard_solve(const SpectralOperator& op, double alpha,
                          const AAAForcing& f, const Kernel& kernel,
                          const TimeGrid& window, double history_T,
                          const Path& initial_guess,
                          const PicardOptions& opts) {
  require_open_order(alpha, "picard_solve");
  if (!(history_T > 0.0))
    throw std::invalid_argument("picard_solve: history_T must be > 0");
  if (opts.tol <= 0.0 || opts.max_iter < 1)
    throw std::invalid_argument("picard_solve: bad tol/max_iter");
  const Eigen::Index n_modes = op.n_modes();
  if (initial_guess.dim() != n_modes || !initial_guess.grid.same_as(window))
    throw std::invalid_argument(
        "picard_solve: initial guess must live on the solve window with one "
        "row per mode");
  const double dt = window.dt;
  const auto L = static_cast<Eigen::Index>(std::llround(history_T / dt));
  if (L < 2)
    throw std::invalid_argument(
        "picard_solve: history budget error - history_T spans fewer than two "
        "steps");
  if (opts.delay_tau >= 0.0 && opts.delay_tau > history_T)
    throw std::invalid_argument("picard_solve: delay_tau exceeds history_T");

  const double omega = op.sector.omega;
  double CM = opts.CM;
  if (CM <= 0.0) {
    const double t_max = std::max(2.0 * history_T,
                                  std::pow(2e3 / std::abs(omega), 1.0 / alpha));
    CM = operator_decay_constant(op, alpha, t_max, 1200);
  }
  const double k_l1 =
      opts.delay_tau >= 0.0 ? 1.0 : kernel.l1_norm();
  ContractionReport contraction =
      contraction_constant(CM, alpha, omega, f.lipschitz_L, k_l1);

  // Reversed trapezoid weights against the lag-l symbol E_a(mu_k (l dt)^a):
  // column i of Wrev multiplies the forcing at lag L - i.
  Eigen::MatrixXd Wrev(n_modes, L + 1);
  for (Eigen::Index k = 0; k < n_modes; ++k)
    for (Eigen::Index l = 0; l <= L; ++l) {
      const double w = (l == 0 || l == L) ? 0.5 : 1.0;
      Wrev(k, L - l) =
          w * dt *
          resolvent_symbol(alpha, op.eigenvalues(k), static_cast<double>(l) * dt);
    }

  const Eigen::Index n_pad = window.n + L;
  const TimeGrid pad_grid(window.t0 - static_cast<double>(L) * dt, dt, n_pad);

  std::unique_ptr<SineCollocation> colloc;
  if (op.basis_tag == BasisTag::dirichlet_sine_on_0_pi)
    colloc = std::make_unique<SineCollocation>(n_modes, 4 * n_modes + 1);

  double f_sup = 0.0;
  // One application of the discretized F: returns the new window iterate.
  auto apply_F = [&](const Eigen::MatrixXd& u_win) {
    Path u_pad(pad_grid, n_modes);
    u_pad.values.leftCols(L).colwise() =
        Eigen::VectorXd(u_win.col(0));  // constant history extension
    u_pad.values.rightCols(window.n) = u_win;

    Eigen::MatrixXd phi(n_modes, n_pad);
    if (opts.delay_tau >= 0.0) {
      for (Eigen::Index j = 0; j < n_pad; ++j) {
        const double s = std::max(pad_grid.node(j) - opts.delay_tau,
                                  pad_grid.t0);
        phi.col(j) = u_pad.interpolate(s);
      }
    } else {
      phi = convolve_history_all(kernel, u_pad, history_T);
    }

    Eigen::MatrixXd fhat(n_modes, n_pad);
    for (Eigen::Index j = 0; j < n_pad; ++j)
      fhat.col(j) = eval_forcing_spectral(f, colloc.get(), pad_grid.node(j),
                                          u_pad.values.col(j), phi.col(j));
    f_sup = std::max(f_sup, fhat.cwiseAbs().maxCoeff());

    Eigen::MatrixXd out(n_modes, window.n);
    for (Eigen::Index k = 0; k < n_modes; ++k) {
      const Eigen::RowVectorXd wk = Wrev.row(k);
      const Eigen::RowVectorXd fk = fhat.row(k);
      for (Eigen::Index j = 0; j < window.n; ++j)
        out(k, j) = wk.dot(fk.segment(j, L + 1));
    }
    return out;
  };

  PicardResult res;
  res.contraction = contraction;
  res.truncation_budget.history_T = history_T;

  Eigen::MatrixXd u_win = initial_guess.values;
  double prev_delta = -1.0;
  for (int iter = 1; iter <= opts.max_iter; ++iter) {
    const Eigen::MatrixXd next = apply_F(u_win);
    if (!next.allFinite())
      throw std::runtime_error("picard_solve: divergent iterate at iteration " +
                               std::to_string(iter));
    const double delta = (next - u_win).cwiseAbs().maxCoeff();
    res.iterate_deltas.push_back(delta);
    res.iterations = iter;
    if (prev_delta > 0.0)
      res.empirical_ratio = std::max(res.empirical_ratio, delta / prev_delta);
    prev_delta = delta;
    u_win = next;

    double lam = res.empirical_ratio;
    if (lam <= 0.0)
      lam = contraction.Lambda < 1.0 ? contraction.Lambda : 0.5;
    lam = std::min(lam, 0.999);
    if (delta <= opts.tol * (1.0 - lam)) {
      res.converged = true;
      break;
    }
  }

  res.fixed_point = Path(window, u_win);
  res.residual = (apply_F(u_win) - u_win).cwiseAbs().maxCoeff();
  res.truncation_budget.tail_error_bound =
      CM * f_sup * cuesta_kernel_tail(alpha, omega, history_T);
  if (opts.strict_budget &&
      res.truncation_budget.tail_error_bound > opts.tol)
    throw std::invalid_argument(
        "picard_solve: budget error - history_T too small for requested tol "
        "(tail bound " +
        std::to_string(res.truncation_budget.tail_error_bound) + ")");
  return res;
}

Eigen::VectorXd NonlocalCondition::eval_g(const Path& u_ref) const {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(u_ref.dim());
  for (const PointWeight& p : points) {
    if (p.tau < 0.0)
      throw std::domain_error("NonlocalCondition: tau must be >= 0");
    if (!u_ref.covers(p.tau))
      throw std::out_of_range(
          "NonlocalCondition: coverage error - point t = " +
          std::to_string(p.tau) + " outside the reference path");
    g += p.weight * u_ref.interpolate(p.tau);
  }
  return g;
}

Path ivp_solve(const SpectralOperator& op, double alpha, const Path& f_path,
               const NonlocalCondition& cond, const Path& u_ref,
               const TimeGrid& window) {
  require_open_order(alpha, "ivp_solve");
  if (std::abs(window.t0) > 1e-12)
    throw std::invalid_argument("ivp_solve: window must start at t = 0");
  if (cond.u0.size() != op.n_modes())
    throw std::invalid_argument("ivp_solve: u0 dimension mismatch");
  if (f_path.dim() != op.n_modes())
    throw std::invalid_argument("ivp_solve: forcing path dimension mismatch");
  if (std::abs(f_path.grid.dt - window.dt) > 1e-12)
    throw std::invalid_argument("ivp_solve: forcing path must share dt");
  const double off_real = (window.t0 - f_path.grid.t0) / window.dt;
  const auto off = static_cast<Eigen::Index>(std::llround(off_real));
  if (std::abs(off_real - static_cast<double>(off)) > 1e-6 || off < 0 ||
      off + window.n > f_path.grid.n)
    throw std::invalid_argument(
        "ivp_solve: forcing path does not cover the window on aligned nodes");

  const Eigen::VectorXd x0 = cond.u0 - cond.eval_g(u_ref);
  const Eigen::Index n_modes = op.n_modes();
  Eigen::MatrixXd symbols(n_modes, window.n);
  for (Eigen::Index k = 0; k < n_modes; ++k)
    for (Eigen::Index l = 0; l < window.n; ++l)
      symbols(k, l) = resolvent_symbol(alpha, op.eigenvalues(k),
                                       static_cast<double>(l) * window.dt);

  Path v(window, n_modes);
  for (Eigen::Index j = 0; j < window.n; ++j) {
    Eigen::VectorXd acc = symbols.col(j).cwiseProduct(x0);
    if (j > 0) {
      Eigen::VectorXd quad = Eigen::VectorXd::Zero(n_modes);
      for (Eigen::Index l = 0; l <= j; ++l) {
        const double w = (l == 0 || l == j) ? 0.5 : 1.0;
        quad += w * symbols.col(l).cwiseProduct(f_path.values.col(off + j - l));
      }
      acc += quad * window.dt;
    }
    v.values.col(j) = acc;
  }
  return v;
}

GapReport asymptotic_gap(const Path& v, const Path& u, double alpha,
                         double omega) {
  if (!v.grid.same_as(u.grid) || v.dim() != u.dim())
    throw std::invalid_argument("asymptotic_gap: paths must share grid/dim");
  if (v.grid.t0 < 0.0)
    throw std::invalid_argument("asymptotic_gap: grid must start at t >= 0");
  if (!(omega < 0.0))
    throw std::domain_error("asymptotic_gap: omega must be < 0");
  GapReport rep;
  rep.grid = v.grid;
  rep.gaps.resize(v.grid.n);
  for (Eigen::Index j = 0; j < v.grid.n; ++j) {
    rep.gaps(j) = (v.values.col(j) - u.values.col(j)).norm();
    const double t = v.grid.node(j);
    rep.fitted_c = std::max(
        rep.fitted_c, rep.gaps(j) * (1.0 + std::abs(omega) * std::pow(t, alpha)));
  }
  const Eigen::Index tenth = std::max<Eigen::Index>(1, v.grid.n / 10);
  const double early = rep.gaps.head(tenth).maxCoeff();
  const double late = rep.gaps.tail(tenth).maxCoeff();
  rep.late_over_early = early > 0.0 ? late / early : 0.0;
  return rep;
}

}  // namespace mildsol
