#pragma once

#include "mildsol/time_grid.hpp"

#include <optional>
#include <vector>

namespace mildsol {

/// L1(R+) memory kernel for Ku(t) = Int_{-inf}^t k(t-s) u(s) ds.
class Kernel {
 public:
  enum class Form { exponential, sampled };

  /// k(tau) = scale * exp(-rate * tau), rate > 0.
  static Kernel exponential(double rate, double scale);

  /// Kernel tabulated on a nonnegative grid; trapezoidal L1 norm. The tail
  /// beyond the last sample must already be negligible: the last |value|
  /// must be <= tail_tol * max |value|.
  static Kernel sampled(std::vector<double> grid, std::vector<double> values,
                        double tail_tol = 1e-8);

  Form form() const { return form_; }
  double rate() const { return rate_; }
  double scale() const { return scale_; }
  const std::vector<double>& sample_grid() const { return grid_; }
  const std::vector<double>& sample_values() const { return values_; }

  /// k(tau) for tau >= 0 (linear interpolation for sampled kernels).
  double operator()(double tau) const;

  /// ||k||_{L1(R+)}: exact |scale|/rate for exponential kernels.
  double l1_norm() const { return l1_; }

  /// Upper bound on Int_T^inf |k|; exact for exponential kernels.
  double tail_bound(double T) const;

  /// Effective support length: tail_bound(support_hint()) is negligible.
  double support_hint() const;

 private:
  Kernel() = default;
  Form form_ = Form::exponential;
  double rate_ = 1.0;
  double scale_ = 1.0;
  std::vector<double> grid_, values_;
  double l1_ = 1.0;
};

/// Trapezoidal approximation of Int_{t_j - history_T}^{t_j} k(t_j - s) u(s) ds,
/// componentwise. The path must cover [t_j - history_T, t_j]; total error is
/// the quadrature error plus tail_bound(history_T) * ||u||_inf.
Eigen::VectorXd convolve_history(const Kernel& kernel, const Path& u,
                                 Eigen::Index j, double history_T);

/// All nodes at once; exponential kernels use the O(n) recursive update
/// K_j = e^{-rate dt} K_{j-1} + local trapezoid.
Eigen::MatrixXd convolve_history_all(const Kernel& kernel, const Path& u,
                                     double history_T);

}  // namespace mildsol
