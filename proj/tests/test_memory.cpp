#include "mildsol/memory_kernel.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace mildsol;

TEST_CASE("exponential kernel closed forms") {
  const Kernel k = Kernel::exponential(2.0, 3.0);
  CHECK(k.l1_norm() == doctest::Approx(1.5).epsilon(1e-15));
  CHECK(k(0.0) == 3.0);
  CHECK(k(1.0) == doctest::Approx(3.0 * std::exp(-2.0)).epsilon(1e-15));
  CHECK(k(-0.5) == 0.0);
  CHECK(k.tail_bound(4.0) ==
        doctest::Approx(std::exp(-8.0) * 1.5).epsilon(1e-12));
  CHECK(k.tail_bound(k.support_hint()) < 1e-11 * k.l1_norm());
  CHECK_THROWS(Kernel::exponential(0.0, 1.0));
}

TEST_CASE("sampled kernel trapezoid norm and tail guard") {
  std::vector<double> grid, vals;
  for (int i = 0; i <= 400; ++i) {
    grid.push_back(0.05 * i);
    vals.push_back(std::exp(-grid.back()));
  }
  const Kernel k = Kernel::sampled(grid, vals, 1e-8);
  CHECK(k.l1_norm() == doctest::Approx(1.0).epsilon(1e-3));
  CHECK(k(0.025) == doctest::Approx(0.5 * (1.0 + std::exp(-0.05))));
  // tail has not decayed on a short window
  std::vector<double> short_grid{0.0, 0.5, 1.0};
  std::vector<double> short_vals{1.0, 0.6, 0.37};
  CHECK_THROWS(Kernel::sampled(short_grid, short_vals, 1e-8));
}

TEST_CASE("history convolution of a constant path") {
  const Kernel k = Kernel::exponential(1.0, 1.0);
  const TimeGrid g(-40.0, 0.01, 8001);
  const Path u = sample_scalar(g, [](double) { return 1.0; });
  const double T = 30.0;
  const Eigen::VectorXd w = convolve_history(k, u, g.n - 1, T);
  CHECK(w(0) == doctest::Approx(1.0 - std::exp(-T)).epsilon(1e-4));
}

TEST_CASE("harmonic closed form: K cos = (cos + sin)/2") {
  const Kernel k = Kernel::exponential(1.0, 1.0);
  const TimeGrid g(-40.0, 0.005, 16001);
  const Path u = sample_scalar(g, [](double t) { return std::cos(t); });
  const Eigen::MatrixXd all = convolve_history_all(k, u, 35.0);
  for (Eigen::Index j = g.n - 400; j < g.n; j += 80) {
    const double t = g.node(j);
    CHECK(all(0, j) ==
          doctest::Approx(0.5 * (std::cos(t) + std::sin(t))).epsilon(1e-4));
  }
}

TEST_CASE("recursive exponential path agrees with direct summation") {
  const Kernel k = Kernel::exponential(1.3, 0.7);
  const TimeGrid g(-10.0, 0.02, 1501);
  const Path u =
      sample_scalar(g, [](double t) { return std::sin(2.0 * t) + 0.3 * t; });
  const double T = 5.0;
  const Eigen::MatrixXd all = convolve_history_all(k, u, T);
  for (Eigen::Index j : {260, 700, 1200, 1500}) {
    const Eigen::VectorXd one = convolve_history(k, u, j, T);
    CHECK(std::abs(all(0, j) - one(0)) < 1e-10);
  }
}

TEST_CASE("sampled kernel all-nodes path matches single-node calls") {
  std::vector<double> grid, vals;
  for (int i = 0; i <= 300; ++i) {
    grid.push_back(0.02 * i);
    vals.push_back(std::exp(-2.0 * grid.back()));
  }
  const Kernel k = Kernel::sampled(grid, vals, 1e-5);
  const TimeGrid g(-8.0, 0.02, 801);
  const Path u = sample_scalar(g, [](double t) { return std::cos(3.0 * t); });
  const Eigen::MatrixXd all = convolve_history_all(k, u, 4.0);
  for (Eigen::Index j : {200, 500, 800}) {
    const Eigen::VectorXd one = convolve_history(k, u, j, 4.0);
    CHECK(std::abs(all(0, j) - one(0)) < 1e-12);
  }
}

TEST_CASE("coverage error when the path cannot reach back") {
  const Kernel k = Kernel::exponential(1.0, 1.0);
  const TimeGrid g(0.0, 0.1, 51);
  const Path u = sample_scalar(g, [](double) { return 1.0; });
  CHECK_THROWS(convolve_history(k, u, 10, 30.0));
}
