#pragma once

#include "mildsol/forcing.hpp"
#include "mildsol/memory_kernel.hpp"
#include "mildsol/spectral_operator.hpp"
#include "mildsol/time_grid.hpp"

#include <optional>
#include <vector>

namespace mildsol {

/// Contraction constant Lambda = CM |omega|^{-1/a} pi/(a sin(pi/a)) L_f (1+k_l1).
struct ContractionReport {
  double Lambda = 0.0;
  struct Factors {
    double CM = 0.0;
    double omega = 0.0;
    double alpha = 0.0;
    double L_f = 0.0;
    double k_l1 = 0.0;
  } factors;
  enum class Verdict { contractive, not_contractive } verdict =
      Verdict::not_contractive;
  /// For the model-problem bookkeeping: (|beta|+1) divided by the admissible
  /// threshold alpha sin(pi/alpha) / (3 CM |mu|^{-1/alpha} pi); < 1 passes.
  std::optional<double> example1_condition_value;
};

ContractionReport contraction_constant(double CM, double alpha, double omega,
                                       double L_f, double k_l1);

/// Same report with the alternate model-problem smallness bookkeeping filled
/// in: L_f = max(3|beta|, 1), k_l1 = 1 (unit exponential kernel), and the
/// side condition |beta|+1 < alpha sin(pi/alpha)/(3 CM |mu|^{-1/alpha} pi).
ContractionReport contraction_constant_example1(double CM, double alpha,
                                                double mu, double beta);

struct PicardResult {
  Path fixed_point;                   // modes x time on the solve window
  double residual = 0.0;              // ||F u* - u*||_inf
  std::vector<double> iterate_deltas;  // ||u_{n+1} - u_n||_inf
  double empirical_ratio = 0.0;       // max successive delta quotient
  Eigen::Index iterations = 0;
  struct TruncationBudget {
    double history_T = 0.0;
    double tail_error_bound = 0.0;
  } truncation_budget;
  ContractionReport contraction;
  bool converged = false;
};

struct PicardOptions {
  double tol = 1e-8;
  int max_iter = 60;
  /// < 0: memory argument is Ku via `kernel`; >= 0: point delay u(t - tau).
  double delay_tau = -1.0;
  /// Throw a budget error if the history-truncation bound exceeds tol.
  bool strict_budget = false;
  /// Uniform decay constant; <= 0 recomputes it from certificates.
  double CM = -1.0;
};

/// Picard iteration for u(t) = Int_{-inf}^t S_alpha(t-s) f(s,u(s),Ku(s)) ds,
/// truncated to `window` with a constant-extension history pad of length
/// history_T; the tail is budgeted, not resolved.
PicardResult picard_solve(const SpectralOperator& op, double alpha,
                          const AAAForcing& f, const Kernel& kernel,
                          const TimeGrid& window, double history_T,
                          const Path& initial_guess,
                          const PicardOptions& opts = {});

/// Nonlocal initial data u(0) + g(u) = u0, g(u) = sum_i c_i u(tau_i).
struct NonlocalCondition {
  struct PointWeight {
    double tau = 0.0;
    double weight = 0.0;
  };
  std::vector<PointWeight> points;
  Eigen::VectorXd u0;

  /// g evaluated on a reference path.
  Eigen::VectorXd eval_g(const Path& u_ref) const;
};

/// Variation of parameters v(t) = S_alpha(t)(u0 - g(u_ref)) +
/// Int_0^t S_alpha(t-s) f_path(s) ds on a window starting at 0; f_path holds
/// mode coefficients of the forcing along the reference trajectory.
Path ivp_solve(const SpectralOperator& op, double alpha, const Path& f_path,
               const NonlocalCondition& cond, const Path& u_ref,
               const TimeGrid& window);

struct GapReport {
  TimeGrid grid;
  Eigen::VectorXd gaps;    // ||v(t_j) - u(t_j)||_2 per node
  double fitted_c = 0.0;   // min c with gap(t) <= c/(1+|omega|t^alpha)
  double late_over_early = 0.0;  // gap near t_end over gap near t0 (maxima)
};

/// Per-node gap ||v - u|| with the algebraic-decay envelope fit.
GapReport asymptotic_gap(const Path& v, const Path& u, double alpha,
                         double omega);

}  // namespace mildsol
