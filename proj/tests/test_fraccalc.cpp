#include "mildsol/fraccalc.hpp"

#include <doctest.h>

#include <cmath>

using namespace mildsol;

namespace {

Path power_path(double t_end, double dt, double p) {
  const auto n = static_cast<Eigen::Index>(std::llround(t_end / dt)) + 1;
  return sample_scalar(TimeGrid(0.0, dt, n),
                       [p](double t) { return std::pow(t, p); });
}

// I^a t^p = Gamma(p+1)/Gamma(p+a+1) t^(p+a)
double rl_power_exact(double a, double p, double t) {
  return std::tgamma(p + 1.0) / std::tgamma(p + a + 1.0) * std::pow(t, p + a);
}

double end_error_rl(double a, double p, double dt) {
  const Path f = power_path(1.0, dt, p);
  const Path g = rl_integral(f, FracOrder(a));
  const double t = g.grid.t_end();
  return std::abs(g.values(0, g.grid.n - 1) - rl_power_exact(a, p, t));
}

}  // namespace

TEST_CASE("rl_integral power rule and first-order convergence") {
  for (double a : {0.5, 1.5}) {
    for (double p : {2.0, 3.0}) {
      const double coarse = end_error_rl(a, p, 2e-3);
      const double fine = end_error_rl(a, p, 1e-3);
      CHECK(fine < 2e-5);
      // observed order >= 1 under halving
      CHECK(coarse / fine >= 2.0 * 0.9);
    }
  }
}

TEST_CASE("rl_integral at alpha = 1 reproduces the exact trapezoid") {
  const Path f = sample_scalar(TimeGrid(0.0, 0.01, 101),
                               [](double t) { return std::cos(3.0 * t); });
  const Path g = rl_integral(f, FracOrder(1.0));
  double acc = 0.0;
  CHECK(g.values(0, 0) == 0.0);
  for (Eigen::Index j = 1; j < f.grid.n; ++j) {
    acc += 0.5 * (f.values(0, j) + f.values(0, j - 1)) * f.grid.dt;
    CHECK(std::abs(g.values(0, j) - acc) < 1e-13);
  }
}

TEST_CASE("rl_integral semigroup I^0.5 I^0.5 = I^1") {
  const Path f = sample_scalar(TimeGrid(0.0, 1e-3, 1001),
                               [](double t) { return t * t; });
  const Path half = rl_integral(f, FracOrder(0.5));
  const Path twice = rl_integral(half, FracOrder(0.5));
  const Path whole = rl_integral(f, FracOrder(1.0));
  const double err = (twice.values - whole.values).cwiseAbs().maxCoeff();
  CHECK(err < 1e-4);
}

TEST_CASE("rl_integral is linear") {
  const TimeGrid g(0.0, 0.01, 201);
  const Path f1 = sample_scalar(g, [](double t) { return std::sin(t); });
  const Path f2 = sample_scalar(g, [](double t) { return t * t * t; });
  Path combo(g, 1);
  combo.values = 2.0 * f1.values - 3.0 * f2.values;
  const FracOrder a(0.7);
  const Eigen::MatrixXd direct = rl_integral(combo, a).values;
  const Eigen::MatrixXd split =
      2.0 * rl_integral(f1, a).values - 3.0 * rl_integral(f2, a).values;
  CHECK((direct - split).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("caputo power rule: polynomial exactness and observed order") {
  // D^a t^p = Gamma(p+1)/Gamma(p+1-a) t^(p-a)
  auto end_error = [](double a, double p, double dt) {
    const Path f = power_path(1.0, dt, p);
    const Path d = caputo_derivative(f, FracOrder(a));
    const double t = d.grid.t_end();
    const double exact = std::tgamma(p + 1.0) / std::tgamma(p + 1.0 - a) *
                         std::pow(t, p - a);
    return std::abs(d.values(0, d.grid.n - 1) - exact);
  };
  for (double a : {1.25, 1.5, 1.75}) {
    // quadratic and cubic data are reproduced to rounding: the second
    // difference and the product trapezoid are both exact there
    for (double p : {2.0, 3.0}) CHECK(end_error(a, p, 1e-3) < 1e-9);
    // t^4 carries genuine truncation error; halving dt must shrink it by
    // at least first order
    const double coarse = end_error(a, 4.0, 2e-3);
    const double fine = end_error(a, 4.0, 1e-3);
    CHECK(fine < 5e-3);
    CHECK(coarse / fine >= 2.0 * 0.8);
  }
}

TEST_CASE("caputo derivative annihilates affine functions") {
  const Path f = sample_scalar(TimeGrid(0.0, 0.01, 101),
                               [](double t) { return 3.0 - 2.0 * t; });
  const Path d = caputo_derivative(f, FracOrder(1.5));
  CHECK(d.values.cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("rl_derivative matches caputo when f(0) = f'(0) = 0") {
  const Path f = power_path(1.0, 1e-3, 3.0);
  const FracOrder a(1.5);
  const FracDerivative rd = rl_derivative(f, a);
  const Path cd = caputo_derivative(f, a);
  CHECK_FALSE(rd.origin_singular);
  const double err =
      (rd.value.values - cd.values).cwiseAbs().maxCoeff();
  CHECK(err < 5e-3);
}

TEST_CASE("rl_derivative flags the origin singularity for f(0) != 0") {
  const Path f = sample_scalar(TimeGrid(0.0, 0.01, 101),
                               [](double) { return 1.0; });
  const FracDerivative rd = rl_derivative(f, FracOrder(1.5));
  CHECK(rd.origin_singular);
  CHECK(std::isnan(rd.value.values(0, 0)));
}

TEST_CASE("domain guards") {
  CHECK_THROWS_AS(FracOrder(0.0), std::domain_error);
  CHECK_THROWS_AS(FracOrder(2.5), std::domain_error);
  const Path off_origin = sample_scalar(TimeGrid(1.0, 0.01, 11),
                                        [](double t) { return t; });
  CHECK_THROWS(rl_integral(off_origin, FracOrder(0.5)));
  const Path f = power_path(1.0, 0.01, 2.0);
  CHECK_THROWS_AS(caputo_derivative(f, FracOrder(0.5)), std::domain_error);
}
