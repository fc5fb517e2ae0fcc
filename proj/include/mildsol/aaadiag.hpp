#pragma once

#include "mildsol/forcing.hpp"
#include "mildsol/time_grid.hpp"

#include <functional>
#include <optional>
#include <utility>
#include <vector>

namespace mildsol {

/// Positive, increasing translate shifts for recurrence tests.
struct ShiftSequence {
  std::vector<double> shifts;
  enum class Provenance { diophantine_sqrt2, user } provenance =
      Provenance::user;

  static ShiftSequence user_defined(std::vector<double> s);
};

/// Shifts s_m = 2 pi q_m with q_m the Pell denominators of the continued
/// fraction of sqrt(2), so that both cos(t+s_m) ~ cos t and
/// cos(sqrt2 (t+s_m)) ~ cos(sqrt2 t) (angular error <= 2 pi / q_m).
ShiftSequence sqrt2_shift_sequence(int n);

struct TranslateReport {
  std::vector<double> errors;          // e_m = sup_probe ||u(t+s_m) - u(t)||
  std::vector<double> reverse_errors;  // sup_probe ||u(t-s_m) - u(t)||
  Path limit_candidate;                // u restricted to the probe grid
  bool two_sided_ok = false;
  bool decreasing = false;  // e_last <= e_first / 2 across the sequence
};

/// Translate recurrence test with u itself as the limit candidate.
TranslateReport translate_test(const Path& u, const ShiftSequence& shifts,
                               const TimeGrid& probe_grid);

/// True iff sup over nodes t_j >= T of ||u - candidate_aa|| <= eps.
bool decay_split_test(const Path& u, const Path& candidate_aa, double T,
                      double eps);

/// Weight h: R+ -> [1, inf), nondecreasing, h -> inf (h == 1 tolerated for
/// closed-form checks). Evaluation of a sample < 1 is a weight error.
class WeightFunction {
 public:
  static WeightFunction one_plus_t2();
  static WeightFunction one_plus_t();
  static WeightFunction constant_one();
  static WeightFunction from_function(std::function<double(double)> h);

  /// h(max(t, 0)): the history extension by the left value h(0).
  double operator()(double t) const;

 private:
  std::function<double(double)> h_;
};

/// ||u||_h = max_j ||u(t_j)|| / h(t_j) on a nonnegative-time path.
double ch_norm(const Path& u, const WeightFunction& h);

/// beta(r) = CM * || t -> Int_0^inf W(r h(t-s)) / (1+|omega|s^alpha) ds ||_h
/// (the change-of-variables form), sup over a log-spaced t in [0, t_max].
/// Truncation of the s-integral is budgeted to <= 1% of the computed value.
double beta_of_r(double CM, double alpha, double omega, const GrowthBound& W,
                 const WeightFunction& h, double r, double t_max = 1e4,
                 int n_t = 48, int n_s = 400);

struct HypothesisReport {
  std::vector<std::pair<double, double>> beta_samples;  // (r, beta(r))
  bool condition_i_ok = false;
  std::vector<std::pair<double, double>> condition_i_trace;  // (t, value)
  bool condition_iv_ok = false;
  std::vector<double> xi_over_beta;  // along xi_grid
  struct HolderVariant {
    double gamma0 = 0.0;
    double gamma1 = 0.0;
    double theta = 1.0;
    double gamma_over_CM = 0.0;  // sup_t Int h^theta(t-s)/(1+|omega|s^a) ds
    bool ok = false;             // the sup stabilized (finite gamma)
  };
  std::optional<HolderVariant> holder_variant;
};

struct Theorem2Options {
  double condition_i_threshold = 1e-3;
  double condition_i_t_max = 1e8;
  double liminf_margin = 0.05;
  double beta_t_max = 1e4;
};

/// Conditions (i) and (iv) of the non-Lipschitz existence theorem for
/// W(xi) = gamma0 + gamma1 xi^theta, plus the Holder-variant constant.
HypothesisReport check_theorem2(double CM, double alpha, double omega,
                                const GrowthBound& W, const WeightFunction& h,
                                const std::vector<double>& r_grid,
                                const std::vector<double>& xi_grid,
                                const Theorem2Options& opts = {});

}  // namespace mildsol
