#include "mildsol/mlf.hpp"

#include "mildsol/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace mildsol;

TEST_CASE("ml_eval matches frozen high-precision references") {
  struct Ref {
    double a, z, v;
  };
  // Values frozen from an independent 120+ digit series evaluation.
  const Ref refs[] = {
      {1.5, -1.0, 0.396629365318088084},
      {1.5, -2.8284271247461903, -0.149363895024063721},
      {1.5, -10.0, -0.109713054252740147},
      {1.5, -89.0, -0.00316541891600175776},
      {1.1, -25.0, -0.00412729156835710451},
      {1.9, -200.0, -0.242429455795939068},
      {1.5, -1000.0, -0.00028209108987501461},
      {1.25, -531.8295897, -0.000385107171208896291},
      {1.1, -36.96894092, -0.00269770121478102909},
      {1.75, -3760.603093, -0.0000549329298293594339},
      {1.9, -6762.433378, -0.000205068934643558},
      {1.0, 1.0, 2.718281828459045235},
      {2.0, -9.869604401089358, -1.0},
  };
  for (const Ref& r : refs)
    CHECK(std::abs(ml_eval(r.a, r.z) - r.v) < 2e-9);
}

TEST_CASE("E_1 is exp and E_2(-t^2) is cos t") {
  for (int i = 0; i <= 100; ++i) {
    const double t = 10.0 * i / 100.0;
    CHECK(std::abs(ml_eval(1.0, -t) - std::exp(-t)) < 1e-10);
    CHECK(std::abs(ml_eval(2.0, -t * t) - std::cos(t)) < 1e-10);
  }
}

TEST_CASE("series and contour routes agree on the validation lattice") {
  double worst = 0.0;
  for (double a : {1.1, 1.5, 1.9})
    for (double mu : {-0.5, -4.0})
      for (double t : {0.1, 1.0, 5.0, 20.0}) {
        const double series = resolvent_symbol(a, mu, t);
        const double contour = contour_eval(a, mu, t).real();
        worst = std::max(worst, std::abs(series - contour));
      }
  CHECK(worst < 1e-8);
}

TEST_CASE("crossover band discrepancy stays small") {
  // |z|^(1/a) near the regime switch: both routes are evaluated and compared.
  for (double a : {1.3, 1.6, 1.9}) {
    const double z = -std::pow(20.0, a);
    const MlResult r = ml_eval_detail(a, {z, 0.0});
    if (r.crossover_discrepancy >= 0.0)
      CHECK(r.crossover_discrepancy < 1e-8);
  }
}

TEST_CASE("resolvent_symbol boundary behavior") {
  CHECK(resolvent_symbol(1.5, -3.0, 0.0) == 1.0);
  CHECK_THROWS(resolvent_symbol(1.5, -3.0, -1.0));
  CHECK_THROWS(resolvent_symbol(1.5, 1.0, 1.0));  // mu > 0 rejected
}

TEST_CASE("contour oracle sanity points") {
  // mu = 0: E_a(0) = 1 for every t.
  CHECK(std::abs(contour_eval(1.5, 0.0, 1.0).real() - 1.0) < 1e-9);
  // a = 2: E_2(mu t^2) = cos(sqrt(|mu|) t); zero at t = pi/2 for mu = -1.
  CHECK(std::abs(contour_eval(2.0, -1.0, M_PI / 2).real()) < 1e-9);
}

TEST_CASE("kernel_integral_identity value and scaling") {
  // alpha = 1.5, omega = -1: pi / (1.5 sin(2 pi / 3)) = 2.41839915...
  CHECK(kernel_integral_identity(1.5, -1.0) ==
        doctest::Approx(2.4183991523122903).epsilon(1e-8));
  for (double a : {1.25, 1.5, 1.75})
    for (double c : {2.0, 10.0}) {
      const double base = kernel_integral_identity(a, -1.0);
      const double scaled = kernel_integral_identity(a, -c);
      CHECK(std::abs(scaled - std::pow(c, -1.0 / a) * base) < 1e-14);
    }
}

TEST_CASE("cuesta_kernel_tail complements the finite-window quadrature") {
  for (double a : {1.25, 1.75})
    for (double w : {-0.5, -4.0}) {
      const double T = 30.0;
      const double head = quad::adaptive_simpson(
          [&](double s) { return 1.0 / (1.0 + std::abs(w) * std::pow(s, a)); },
          0.0, T, 1e-12);
      const double total = head + cuesta_kernel_tail(a, w, T);
      CHECK(std::abs(total - kernel_integral_identity(a, w)) < 1e-8);
    }
}

TEST_CASE("decay certificates are finite and stable under grid doubling") {
  for (double a : {1.25, 1.5, 1.75})
    for (double mu : {-1.0, -4.0}) {
      const double t_max = std::pow(1e4 / std::abs(mu), 1.0 / a);
      const DecayCertificate c1 = decay_certificate(a, mu, t_max, 1000);
      const DecayCertificate c2 = decay_certificate(a, mu, t_max, 2000);
      CHECK(std::isfinite(c1.c_est));
      CHECK(c1.c_est > 0.0);
      CHECK(std::abs(c2.c_est - c1.c_est) <= 0.05 * c1.c_est);
    }
}

TEST_CASE("sector type guards") {
  CHECK_THROWS(SectorType(-1.0, 2.0, 1.0));  // theta >= pi/2
  CHECK_THROWS(SectorType(-1.0, 0.5, 0.0));  // M <= 0
  CHECK_THROWS(SectorType::negative_type(1.0, 0.5, 1.0));
}
