#include "mildsol/forcing.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mildsol;

namespace {

Eigen::VectorXd scalar1(double v) {
  return Eigen::VectorXd::Constant(1, v);
}

}  // namespace

TEST_CASE("example1 forcing direct substitution") {
  const AAAForcing f = make_example1_forcing(1.0);
  // t = 0, u = 1, Ku = 0: 1*(1+1) + 1*sin(1) + sin(0)
  const Eigen::VectorXd out = eval_forcing(f, 0.0, scalar1(1.0), scalar1(0.0));
  CHECK(out(0) == doctest::Approx(2.0 + std::sin(1.0)).epsilon(1e-15));
  // origin maps to zero for every t
  for (double t : {-7.0, 0.0, 3.0, 100.0})
    CHECK(eval_forcing(f, t, scalar1(0.0), scalar1(0.0))(0) == 0.0);
}

TEST_CASE("beta = 0 leaves only the memory coupling") {
  const AAAForcing f = make_example1_forcing(0.0);
  CHECK(f.lipschitz_L == 1.0);
  const Eigen::VectorXd out =
      eval_forcing(f, 2.0, scalar1(5.0), scalar1(0.7));
  CHECK(out(0) == doctest::Approx(std::sin(0.7)).epsilon(1e-15));
}

TEST_CASE("decay part vanishes at large |t|") {
  const AAAForcing f = make_example1_forcing(0.3);
  AAAForcing aa_only = f;
  aa_only.decay_scale = 0.0;
  for (double t : {40.0, -40.0, 80.0}) {
    const double full = eval_forcing(f, t, scalar1(1.0), scalar1(0.5))(0);
    const double rest =
        eval_forcing(aa_only, t, scalar1(1.0), scalar1(0.5))(0);
    CHECK(std::abs(full - rest) <= 0.3 * std::exp(-std::abs(t)) + 1e-15);
  }
}

TEST_CASE("lipschitz certificate: estimate below the recorded constant") {
  for (double beta : {0.1, 0.5, 1.0}) {
    const AAAForcing f = make_example1_forcing(beta);
    const double est = estimate_lipschitz(f, 2.0, 4000, 2, 777);
    CHECK(est <= f.lipschitz_L * (1.0 + 1e-6));
  }
}

TEST_CASE("pure linear multiplier approaches 2|beta|") {
  AAAForcing f;
  f.aa_multipliers = {{0.4, 1.0}, {0.4, std::sqrt(2.0)}};
  f.lipschitz_L = 0.8;
  const double est = estimate_lipschitz(f, 1.0, 20000, 1, 42);
  CHECK(est <= 0.8 * (1.0 + 1e-6));
  CHECK(est >= 0.8 * 0.9);
}

TEST_CASE("growth bound W dominates the forcing on random samples") {
  const AAAForcing f = make_example1_forcing(0.25);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> ball(-3.0, 3.0);
  for (int i = 0; i < 500; ++i) {
    const double t = ball(rng) * 10.0, u = ball(rng), phi = ball(rng);
    const double val = std::abs(eval_forcing(f, t, scalar1(u), scalar1(phi))(0));
    CHECK(val <= f.uniform_bound_W(std::abs(u) + std::abs(phi)) + 1e-12);
  }
}

TEST_CASE("additive drive terms are state independent") {
  AAAForcing f;
  f.additive_drive = {{2.0, 0.0}, {0.5, 3.0}};
  const double t = 1.3;
  const double expect = 2.0 + 0.5 * std::cos(3.0 * t);
  CHECK(eval_forcing(f, t, scalar1(0.0), scalar1(0.0))(0) ==
        doctest::Approx(expect).epsilon(1e-15));
  CHECK(eval_forcing(f, t, scalar1(9.0), scalar1(-4.0))(0) ==
        doctest::Approx(expect).epsilon(1e-15));
}

TEST_CASE("point delay evaluation") {
  const TimeGrid g(-5.0, 0.01, 2001);
  const Path affine = sample_scalar(g, [](double t) { return 2.0 * t + 1.0; });
  CHECK(point_delay_eval(affine, 3.0, 1.0)(0) ==
        doctest::Approx(2.0 * 2.0 + 1.0).epsilon(1e-12));
  const Path sine = sample_scalar(g, [](double t) { return std::sin(t); });
  CHECK(point_delay_eval(sine, 2.0, M_PI)(0) ==
        doctest::Approx(-std::sin(2.0)).epsilon(1e-4));
  CHECK_THROWS(point_delay_eval(sine, -4.0, 2.0));  // t - tau not covered
  CHECK_THROWS(point_delay_eval(sine, 1.0, -1.0));
}

TEST_CASE("sine collocation round trip is exact on the mode span") {
  const SineCollocation colloc(6, 25);
  Eigen::VectorXd c(6);
  c << 1.0, -0.5, 0.25, 0.0, 2.0, -1.5;
  const Eigen::VectorXd back = colloc.to_coeffs(colloc.to_values(c));
  CHECK((back - c).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS(SineCollocation(6, 11));  // needs n_points >= 2 n_modes
}

TEST_CASE("spectral evaluation reduces to pointwise for diagonal states") {
  const AAAForcing f = make_example1_forcing(0.2);
  const Eigen::VectorXd u = scalar1(0.8), phi = scalar1(0.1);
  const Eigen::VectorXd direct = eval_forcing(f, 1.0, u, phi);
  const Eigen::VectorXd wrapped =
      eval_forcing_spectral(f, nullptr, 1.0, u, phi);
  CHECK((direct - wrapped).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("spectral evaluation is exact for linear-in-state forcings") {
  // Without pointwise nonlinearities the collocation sandwich is the
  // identity on mode coefficients.
  AAAForcing f;
  f.aa_multipliers = {{0.7, 1.0}};
  const SineCollocation colloc(4, 17);
  Eigen::VectorXd u(4), phi(4);
  u << 1.0, 0.3, -0.2, 0.05;
  phi.setZero();
  const Eigen::VectorXd out = eval_forcing_spectral(f, &colloc, 0.5, u, phi);
  const Eigen::VectorXd expect = 0.7 * std::cos(0.5) * u;
  CHECK((out - expect).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("shape mismatch is rejected") {
  const AAAForcing f = make_example1_forcing(0.1);
  CHECK_THROWS(eval_forcing(f, 0.0, Eigen::VectorXd::Zero(2),
                            Eigen::VectorXd::Zero(3)));
}
