#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>

namespace mildsol::quad {

namespace detail {

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

template <typename F>
double adaptive_step(F& f, double a, double b, double fa, double fm, double fb,
                     double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, m, fa, flm, fm);
  const double right = simpson(m, b, fm, frm, fb);
  const double err = left + right - whole;
  if (depth <= 0 || std::abs(err) <= 15.0 * tol)
    return left + right + err / 15.0;
  return adaptive_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

/// Adaptive Simpson quadrature on [a, b].
template <typename F>
double adaptive_simpson(F f, double a, double b, double tol,
                        int max_depth = 40) {
  if (!(b >= a)) throw std::invalid_argument("adaptive_simpson: b < a");
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = detail::simpson(a, b, fa, fm, fb);
  return detail::adaptive_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

/// Composite trapezoid on a log-spaced grid over [s_min, s_max] plus a
/// rectangle patch on [0, s_min]; for smooth integrands with algebraic tails.
template <typename F>
double log_trapezoid(F f, double s_min, double s_max, int n_nodes) {
  if (!(s_min > 0.0) || !(s_max > s_min))
    throw std::invalid_argument("log_trapezoid: need 0 < s_min < s_max");
  if (n_nodes < 2) throw std::invalid_argument("log_trapezoid: n_nodes < 2");
  const double lr = std::log(s_max / s_min);
  double sum = 0.0;
  double prev_s = s_min, prev_f = f(s_min);
  for (int j = 1; j < n_nodes; ++j) {
    const double s = s_min * std::exp(lr * static_cast<double>(j) / (n_nodes - 1));
    const double fs = f(s);
    sum += 0.5 * (prev_f + fs) * (s - prev_s);
    prev_s = s;
    prev_f = fs;
  }
  sum += f(0.5 * s_min) * s_min;  // midpoint patch near the origin
  return sum;
}

}  // namespace mildsol::quad
