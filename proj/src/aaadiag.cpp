#include "mildsol/aaadiag.hpp"

#include "mildsol/mlf.hpp"
#include "mildsol/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mildsol {

ShiftSequence ShiftSequence::user_defined(std::vector<double> s) {
  if (s.empty())
    throw std::invalid_argument("ShiftSequence: need at least one shift");
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!(s[i] > 0.0))
      throw std::invalid_argument("ShiftSequence: shifts must be positive");
    if (i > 0 && !(s[i] > s[i - 1]))
      throw std::invalid_argument("ShiftSequence: shifts must increase");
  }
  ShiftSequence seq;
  seq.shifts = std::move(s);
  seq.provenance = Provenance::user;
  return seq;
}

ShiftSequence sqrt2_shift_sequence(int n) {
  if (n < 1) throw std::invalid_argument("sqrt2_shift_sequence: n >= 1");
  // Denominators of the convergents of sqrt(2) = [1; 2, 2, 2, ...]:
  // q_{m+1} = 2 q_m + q_{m-1}, starting 1, 2.
  std::vector<double> s;
  s.reserve(static_cast<std::size_t>(n));
  double q_prev = 0.0, q = 1.0;
  for (int m = 0; m < n; ++m) {
    s.push_back(2.0 * M_PI * q);
    const double q_next = 2.0 * q + q_prev;
    q_prev = q;
    q = q_next;
  }
  ShiftSequence seq;
  seq.shifts = std::move(s);
  seq.provenance = ShiftSequence::Provenance::diophantine_sqrt2;
  return seq;
}

TranslateReport translate_test(const Path& u, const ShiftSequence& shifts,
                               const TimeGrid& probe_grid) {
  if (shifts.shifts.empty())
    throw std::invalid_argument("translate_test: empty shift sequence");
  const double s_max = shifts.shifts.back();
  if (!u.covers(probe_grid.t0 - s_max) || !u.covers(probe_grid.t_end() + s_max))
    throw std::invalid_argument(
        "translate_test: coverage error - path must contain the probe grid "
        "shifted by +-" +
        std::to_string(s_max));

  TranslateReport rep;
  rep.limit_candidate = Path(probe_grid, u.dim());
  for (Eigen::Index j = 0; j < probe_grid.n; ++j)
    rep.limit_candidate.values.col(j) = u.interpolate(probe_grid.node(j));

  for (double s : shifts.shifts) {
    double fwd = 0.0, rev = 0.0;
    for (Eigen::Index j = 0; j < probe_grid.n; ++j) {
      const double t = probe_grid.node(j);
      const Eigen::VectorXd base = rep.limit_candidate.values.col(j);
      fwd = std::max(fwd, (u.interpolate(t + s) - base).norm());
      rev = std::max(rev, (u.interpolate(t - s) - base).norm());
    }
    rep.errors.push_back(fwd);
    rep.reverse_errors.push_back(rev);
  }
  rep.decreasing = rep.errors.back() <= 0.5 * rep.errors.front() + 1e-12;
  rep.two_sided_ok =
      rep.reverse_errors.back() <= 0.5 * rep.reverse_errors.front() + 1e-12;
  return rep;
}

bool decay_split_test(const Path& u, const Path& candidate_aa, double T,
                      double eps) {
  if (!u.grid.same_as(candidate_aa.grid) || u.dim() != candidate_aa.dim())
    throw std::invalid_argument("decay_split_test: paths must share grid/dim");
  if (T > u.grid.t_end())
    throw std::invalid_argument(
        "decay_split_test: coverage error - T beyond the grid");
  double worst = 0.0;
  for (Eigen::Index j = 0; j < u.grid.n; ++j) {
    if (u.grid.node(j) < T) continue;
    worst = std::max(
        worst, (u.values.col(j) - candidate_aa.values.col(j)).norm());
  }
  return worst <= eps;
}

WeightFunction WeightFunction::one_plus_t2() {
  WeightFunction w;
  w.h_ = [](double t) { return 1.0 + t * t; };
  return w;
}

WeightFunction WeightFunction::one_plus_t() {
  WeightFunction w;
  w.h_ = [](double t) { return 1.0 + t; };
  return w;
}

WeightFunction WeightFunction::constant_one() {
  WeightFunction w;
  w.h_ = [](double) { return 1.0; };
  return w;
}

WeightFunction WeightFunction::from_function(std::function<double(double)> h) {
  if (!h) throw std::invalid_argument("WeightFunction: empty callable");
  WeightFunction w;
  w.h_ = std::move(h);
  return w;
}

double WeightFunction::operator()(double t) const {
  const double v = h_(std::max(t, 0.0));
  if (!(v >= 1.0))
    throw std::invalid_argument(
        "WeightFunction: weight error - h(t) < 1 at t = " + std::to_string(t));
  return v;
}

double ch_norm(const Path& u, const WeightFunction& h) {
  if (u.grid.t0 < -1e-12)
    throw std::invalid_argument("ch_norm: path must live on t >= 0");
  double norm = 0.0;
  for (Eigen::Index j = 0; j < u.grid.n; ++j)
    norm = std::max(norm, u.values.col(j).norm() / h(u.grid.node(j)));
  return norm;
}

namespace {

/// g(t) = Int_0^inf W(r h(t-s)) / (1 + |omega| s^alpha) ds with the
/// truncation point grown until the tail bound W(r h(t)) * kernel-tail is
/// below 0.2% of the running value.
double normalized_integral(double alpha, double omega, const GrowthBound& W,
                           const WeightFunction& h, double r, double t,
                           int n_s) {
  const double aw = std::abs(omega);
  auto integrand = [&](double s) {
    return W(r * h(t - s)) / (1.0 + aw * std::pow(s, alpha));
  };
  double S = std::max(10.0, std::pow(1e2 / aw, 1.0 / alpha));
  for (int attempt = 0; attempt < 40; ++attempt) {
    const double s_min = S * 1e-10;
    const double value = quad::log_trapezoid(integrand, s_min, S, n_s);
    const double tail = W(r * h(t)) * cuesta_kernel_tail(alpha, omega, S);
    if (tail <= 2e-3 * value || tail <= 1e-300) return value;
    S *= 2.0;
  }
  throw std::runtime_error(
      "beta_of_r: budget error - kernel tail cannot reach the 1% truncation "
      "target");
}

}  // namespace

double beta_of_r(double CM, double alpha, double omega, const GrowthBound& W,
                 const WeightFunction& h, double r, double t_max, int n_t,
                 int n_s) {
  if (!(CM > 0.0) || !(omega < 0.0) || !(r >= 0.0) || !(t_max > 1.0))
    throw std::invalid_argument("beta_of_r: bad parameters");
  if (!(alpha > 1.0) || !(alpha < 2.0))
    throw std::domain_error("beta_of_r: alpha must lie in (1, 2)");
  double sup = normalized_integral(alpha, omega, W, h, r, 0.0, n_s) / h(0.0);
  for (int i = 0; i < n_t; ++i) {
    const double t =
        1e-2 * std::pow(t_max / 1e-2, static_cast<double>(i) / (n_t - 1));
    sup = std::max(sup,
                   normalized_integral(alpha, omega, W, h, r, t, n_s) / h(t));
  }
  return CM * sup;
}

HypothesisReport check_theorem2(double CM, double alpha, double omega,
                                const GrowthBound& W, const WeightFunction& h,
                                const std::vector<double>& r_grid,
                                const std::vector<double>& xi_grid,
                                const Theorem2Options& opts) {
  if (r_grid.empty() || xi_grid.empty())
    throw std::invalid_argument("check_theorem2: empty grids");
  for (std::size_t i = 1; i < r_grid.size(); ++i)
    if (!(r_grid[i] > r_grid[i - 1]))
      throw std::invalid_argument("check_theorem2: r_grid must increase");
  for (std::size_t i = 1; i < xi_grid.size(); ++i)
    if (!(xi_grid[i] > xi_grid[i - 1]))
      throw std::invalid_argument("check_theorem2: xi_grid must increase");
  if (!(r_grid.front() > 0.0) || !(xi_grid.front() > 0.0))
    throw std::invalid_argument("check_theorem2: grids must be positive");

  HypothesisReport rep;
  for (double r : r_grid)
    rep.beta_samples.emplace_back(
        r, beta_of_r(CM, alpha, omega, W, h, r, opts.beta_t_max));

  // Condition (i) at the largest r (the most demanding one for
  // nondecreasing W): trace the normalized integral over a log t-grid.
  const double r_i = r_grid.back();
  const int n_trace = 25;
  for (int i = 0; i < n_trace; ++i) {
    const double t = std::pow(opts.condition_i_t_max,
                              static_cast<double>(i) / (n_trace - 1));
    const double v =
        normalized_integral(alpha, omega, W, h, r_i, t, 400) / h(t);
    rep.condition_i_trace.emplace_back(t, v);
  }
  bool tail_decreasing = true;
  const double t_decade = opts.condition_i_t_max / 10.0;
  double prev = -1.0;
  for (const auto& [t, v] : rep.condition_i_trace) {
    if (t < t_decade) continue;
    if (prev >= 0.0 && v > prev * 1.001 + 1e-15) tail_decreasing = false;
    prev = v;
  }
  rep.condition_i_ok = rep.condition_i_trace.back().second <=
                           opts.condition_i_threshold &&
                       tail_decreasing;

  // Condition (iv): min over the tail third of xi / beta(xi).
  for (double xi : xi_grid)
    rep.xi_over_beta.push_back(
        xi / beta_of_r(CM, alpha, omega, W, h, xi, opts.beta_t_max));
  const std::size_t tail_n = std::max<std::size_t>(
      2, xi_grid.size() / 3);
  const std::size_t start =
      xi_grid.size() > tail_n ? xi_grid.size() - tail_n : 0;
  double min_tail = rep.xi_over_beta[start];
  for (std::size_t i = start; i < rep.xi_over_beta.size(); ++i)
    min_tail = std::min(min_tail, rep.xi_over_beta[i]);
  rep.condition_iv_ok = min_tail > 1.0 + opts.liminf_margin;

  // Holder variant: gamma / CM = sup_t Int h^theta(t-s)/(1+|omega|s^a) ds,
  // with a stabilization check across the last decade of t.
  HypothesisReport::HolderVariant hv;
  hv.gamma0 = W.gamma0;
  hv.gamma1 = W.gamma1;
  hv.theta = W.theta;
  const GrowthBound power{0.0, 1.0, W.theta};
  double sup_early = 0.0, sup_full = 0.0;
  const int n_t = 40;
  for (int i = 0; i < n_t; ++i) {
    const double t = 1e-2 * std::pow(opts.beta_t_max / 1e-2,
                                     static_cast<double>(i) / (n_t - 1));
    const double v = normalized_integral(alpha, omega, power, h, 1.0, t, 400);
    sup_full = std::max(sup_full, v);
    if (t <= opts.beta_t_max / 10.0) sup_early = std::max(sup_early, v);
  }
  hv.gamma_over_CM = sup_full;
  hv.ok = sup_full <= sup_early * 1.02;
  rep.holder_variant = hv;
  return rep;
}

}  // namespace mildsol
