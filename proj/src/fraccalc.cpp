#include "mildsol/fraccalc.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace mildsol {

namespace {

void check_scalar_input(const Path& f, const char* who) {
  if (f.dim() != 1)
    throw std::invalid_argument(std::string(who) + ": scalar path expected");
  if (!f.all_finite())
    throw std::invalid_argument(std::string(who) + ": non-finite samples");
}

// Discrete second derivative: central in the interior, one-sided
// second-order at both ends. Needs n >= 4.
Eigen::RowVectorXd second_difference(const Eigen::RowVectorXd& v, double dt) {
  const Eigen::Index n = v.size();
  Eigen::RowVectorXd d(n);
  const double h2 = dt * dt;
  d(0) = (2.0 * v(0) - 5.0 * v(1) + 4.0 * v(2) - v(3)) / h2;
  for (Eigen::Index j = 1; j + 1 < n; ++j)
    d(j) = (v(j + 1) - 2.0 * v(j) + v(j - 1)) / h2;
  d(n - 1) =
      (2.0 * v(n - 1) - 5.0 * v(n - 2) + 4.0 * v(n - 3) - v(n - 4)) / h2;
  return d;
}

}  // namespace

Path rl_integral(const Path& f, FracOrder alpha) {
  check_scalar_input(f, "rl_integral");
  if (std::abs(f.grid.t0) > 1e-12)
    throw std::invalid_argument("rl_integral: grid must start at t = 0");
  const double a = alpha.alpha;
  const Eigen::Index n = f.grid.n;
  const double dt = f.grid.dt;
  const double scale = std::pow(dt, a) / std::tgamma(a + 2.0);

  // Product-trapezoidal weights: I(t_m) = scale * sum_j w_{m,j} f_j with
  //   w_{m,m} = 1,
  //   w_{m,0} = (m-1)^{a+1} - m^a (m-a-1),
  //   w_{m,j} = (m-j+1)^{a+1} - 2(m-j)^{a+1} + (m-j-1)^{a+1}  (0 < j < m);
  // interior weights depend on the lag only.
  std::vector<double> b(n);  // b[l] = interior weight at lag l >= 1
  for (Eigen::Index l = 1; l < n; ++l) {
    const double lm = static_cast<double>(l);
    b[l] = std::pow(lm + 1.0, a + 1.0) - 2.0 * std::pow(lm, a + 1.0) +
           std::pow(lm - 1.0, a + 1.0);
  }

  Path out(f.grid, 1);
  out.values(0, 0) = 0.0;
  for (Eigen::Index m = 1; m < n; ++m) {
    const double md = static_cast<double>(m);
    double acc =
        (std::pow(md - 1.0, a + 1.0) - std::pow(md, a) * (md - a - 1.0)) *
        f.values(0, 0);
    for (Eigen::Index j = 1; j < m; ++j) acc += b[m - j] * f.values(0, j);
    acc += f.values(0, m);
    out.values(0, m) = scale * acc;
  }
  return out;
}

Path caputo_derivative(const Path& f, FracOrder alpha) {
  alpha.require_open_1_2("caputo_derivative");
  check_scalar_input(f, "caputo_derivative");
  if (f.grid.n < 4)
    throw std::invalid_argument("caputo_derivative: need at least 4 nodes");
  Path d2(f.grid, 1);
  d2.values.row(0) = second_difference(f.values.row(0), f.grid.dt);
  return rl_integral(d2, FracOrder(2.0 - alpha.alpha));
}

FracDerivative rl_derivative(const Path& f, FracOrder alpha) {
  alpha.require_open_1_2("rl_derivative");
  check_scalar_input(f, "rl_derivative");
  if (f.grid.n < 4)
    throw std::invalid_argument("rl_derivative: need at least 4 nodes");
  const Path g = rl_integral(f, FracOrder(2.0 - alpha.alpha));
  FracDerivative out;
  out.value = Path(f.grid, 1);
  out.value.values.row(0) = second_difference(g.values.row(0), f.grid.dt);
  const double scale = f.values.cwiseAbs().maxCoeff();
  if (std::abs(f.values(0, 0)) > 1e-12 * std::max(1.0, scale)) {
    out.origin_singular = true;
    out.value.values(0, 0) = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

}  // namespace mildsol
