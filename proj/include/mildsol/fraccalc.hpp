#pragma once

#include "mildsol/time_grid.hpp"

namespace mildsol {

/// Fractional order; fraccalc accepts (0, 2], the solver additionally
/// restricts to (1, 2).
struct FracOrder {
  double alpha;

  explicit FracOrder(double a) : alpha(a) {
    if (!(a > 0.0) || a > 2.0)
      throw std::domain_error("FracOrder: alpha must lie in (0, 2]");
  }
  void require_open_1_2(const char* who) const {
    if (!(alpha > 1.0) || !(alpha < 2.0))
      throw std::domain_error(std::string(who) +
                              ": alpha must lie strictly in (1, 2)");
  }
};

/// Riemann-Liouville fractional integral I^alpha on a uniform grid starting
/// at t = 0, by product-trapezoidal quadrature (the weakly singular weight is
/// integrated exactly against the piecewise-linear interpolant).
/// Output at t = 0 is exactly 0.
Path rl_integral(const Path& f, FracOrder alpha);

/// Caputo derivative of order alpha in (1, 2): discrete second derivative
/// followed by I^(2-alpha). Needs at least 4 nodes.
Path caputo_derivative(const Path& f, FracOrder alpha);

struct FracDerivative {
  Path value;
  /// Set when f(0) != 0: the closed form diverges at t = 0 and the first
  /// node is reported as NaN instead of a misleading finite sample.
  bool origin_singular = false;
};

/// Riemann-Liouville derivative of order alpha in (1, 2): I^(2-alpha)
/// followed by the discrete second derivative.
FracDerivative rl_derivative(const Path& f, FracOrder alpha);

}  // namespace mildsol
