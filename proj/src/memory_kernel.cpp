#include "mildsol/memory_kernel.hpp"

#include <algorithm>
#include <cmath>

namespace mildsol {

Kernel Kernel::exponential(double rate, double scale) {
  if (!(rate > 0.0))
    throw std::invalid_argument("Kernel::exponential: rate must be > 0");
  if (!std::isfinite(scale))
    throw std::invalid_argument("Kernel::exponential: non-finite scale");
  Kernel k;
  k.form_ = Form::exponential;
  k.rate_ = rate;
  k.scale_ = scale;
  k.l1_ = std::abs(scale) / rate;
  return k;
}

Kernel Kernel::sampled(std::vector<double> grid, std::vector<double> values,
                       double tail_tol) {
  if (grid.size() != values.size() || grid.size() < 2)
    throw std::invalid_argument("Kernel::sampled: need matching grids, n >= 2");
  if (grid.front() < 0.0)
    throw std::invalid_argument("Kernel::sampled: grid must be nonnegative");
  double max_abs = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i]) || !std::isfinite(values[i]))
      throw std::invalid_argument("Kernel::sampled: non-finite samples");
    if (i > 0 && grid[i] <= grid[i - 1])
      throw std::invalid_argument("Kernel::sampled: grid must increase");
    max_abs = std::max(max_abs, std::abs(values[i]));
  }
  if (max_abs > 0.0 && std::abs(values.back()) > tail_tol * max_abs)
    throw std::invalid_argument(
        "Kernel::sampled: tail has not decayed (kernel not integrable on the "
        "sampled window)");
  Kernel k;
  k.form_ = Form::sampled;
  k.grid_ = std::move(grid);
  k.values_ = std::move(values);
  double l1 = 0.0;
  for (std::size_t i = 1; i < k.grid_.size(); ++i)
    l1 += 0.5 * (std::abs(k.values_[i]) + std::abs(k.values_[i - 1])) *
          (k.grid_[i] - k.grid_[i - 1]);
  k.l1_ = l1;
  return k;
}

double Kernel::operator()(double tau) const {
  if (tau < 0.0) return 0.0;
  if (form_ == Form::exponential) return scale_ * std::exp(-rate_ * tau);
  if (tau <= grid_.front()) return values_.front();
  if (tau >= grid_.back()) return 0.0;
  auto it = std::upper_bound(grid_.begin(), grid_.end(), tau);
  const std::size_t i = static_cast<std::size_t>(it - grid_.begin());
  const double w = (tau - grid_[i - 1]) / (grid_[i] - grid_[i - 1]);
  return (1.0 - w) * values_[i - 1] + w * values_[i];
}

double Kernel::tail_bound(double T) const {
  if (T < 0.0) throw std::invalid_argument("Kernel::tail_bound: T < 0");
  if (form_ == Form::exponential)
    return std::exp(-rate_ * T) * std::abs(scale_) / rate_;
  double tail = 0.0;
  for (std::size_t i = 1; i < grid_.size(); ++i) {
    const double a = grid_[i - 1], b = grid_[i];
    if (b <= T) continue;
    const double lo = std::max(a, T);
    const double fa = std::abs((*this)(lo)), fb = std::abs(values_[i]);
    tail += 0.5 * (fa + fb) * (b - lo);
  }
  return tail;
}

double Kernel::support_hint() const {
  if (form_ == Form::exponential) return 27.7 / rate_;  // tail ~ 1e-12 * l1
  return grid_.back();
}

namespace {

Eigen::Index window_lags(const Kernel&, const Path& u, double history_T) {
  const auto L = static_cast<Eigen::Index>(std::llround(history_T / u.grid.dt));
  if (L < 1)
    throw std::invalid_argument("convolve_history: history window below dt");
  return L;
}

}  // namespace

Eigen::VectorXd convolve_history(const Kernel& kernel, const Path& u,
                                 Eigen::Index j, double history_T) {
  if (j < 0 || j >= u.grid.n)
    throw std::out_of_range("convolve_history: node index out of range");
  const Eigen::Index L = window_lags(kernel, u, history_T);
  if (j - L < 0) {
    const double needed = u.grid.node(j) - history_T;
    throw std::invalid_argument(
        "convolve_history: path must extend back to t = " +
        std::to_string(needed) + " (coverage short by " +
        std::to_string(u.grid.t0 - needed) + ")");
  }
  const double dt = u.grid.dt;
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(u.dim());
  for (Eigen::Index l = 0; l <= L; ++l) {
    const double w = (l == 0 || l == L) ? 0.5 : 1.0;
    acc += w * kernel(static_cast<double>(l) * dt) * u.values.col(j - l);
  }
  return acc * dt;
}

Eigen::MatrixXd convolve_history_all(const Kernel& kernel, const Path& u,
                                     double history_T) {
  const Eigen::Index L = window_lags(kernel, u, history_T);
  const Eigen::Index n = u.grid.n;
  const double dt = u.grid.dt;
  Eigen::MatrixXd out(u.dim(), n);

  if (kernel.form() == Kernel::Form::exponential) {
    // Running trapezoid from the path start, then subtract the part older
    // than the window: W_j = R_j - e^{-rate L dt} R_{j-L}.
    const double decay = std::exp(-kernel.rate() * dt);
    const double cut = std::exp(-kernel.rate() * static_cast<double>(L) * dt);
    Eigen::MatrixXd running(u.dim(), n);
    running.col(0).setZero();
    for (Eigen::Index j = 1; j < n; ++j)
      running.col(j) = decay * running.col(j - 1) +
                       kernel.scale() * 0.5 * dt *
                           (u.values.col(j) + decay * u.values.col(j - 1));
    for (Eigen::Index j = 0; j < n; ++j)
      out.col(j) = (j >= L) ? (running.col(j) - cut * running.col(j - L)).eval()
                            : running.col(j);
    return out;
  }

  std::vector<double> kv(static_cast<std::size_t>(L) + 1);
  for (Eigen::Index l = 0; l <= L; ++l)
    kv[static_cast<std::size_t>(l)] = kernel(static_cast<double>(l) * dt);
  for (Eigen::Index j = 0; j < n; ++j) {
    const Eigen::Index lmax = std::min(L, j);
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(u.dim());
    for (Eigen::Index l = 0; l <= lmax; ++l) {
      const double w = (l == 0 || l == lmax) ? 0.5 : 1.0;
      acc += w * kv[static_cast<std::size_t>(l)] * u.values.col(j - l);
    }
    out.col(j) = acc * dt;
  }
  return out;
}

}  // namespace mildsol
