#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mildsol {

/// Uniform time discretization t_j = t0 + j*dt, j = 0..n-1.
struct TimeGrid {
  double t0 = 0.0;
  double dt = 0.0;
  Eigen::Index n = 0;

  TimeGrid() = default;
  TimeGrid(double t0_, double dt_, Eigen::Index n_) : t0(t0_), dt(dt_), n(n_) {
    if (!(dt > 0.0)) throw std::invalid_argument("TimeGrid: dt must be > 0");
    if (n < 2) throw std::invalid_argument("TimeGrid: need at least 2 nodes");
  }

  double node(Eigen::Index j) const { return t0 + static_cast<double>(j) * dt; }
  double t_end() const { return node(n - 1); }

  bool same_as(const TimeGrid& other, double tol = 1e-12) const {
    return n == other.n && std::abs(t0 - other.t0) <= tol &&
           std::abs(dt - other.dt) <= tol;
  }
};

/// Sampled trajectory: one length-dim column per grid node.
struct Path {
  TimeGrid grid;
  Eigen::MatrixXd values;  // dim x n

  Path() = default;
  Path(const TimeGrid& g, Eigen::Index dim)
      : grid(g), values(Eigen::MatrixXd::Zero(dim, g.n)) {}
  Path(const TimeGrid& g, Eigen::MatrixXd vals) : grid(g), values(std::move(vals)) {
    if (values.cols() != grid.n)
      throw std::invalid_argument("Path: values/grid size mismatch");
  }

  Eigen::Index dim() const { return values.rows(); }

  bool all_finite() const { return values.allFinite(); }

  /// Componentwise linear interpolation; t must lie inside the grid.
  Eigen::VectorXd interpolate(double t) const {
    const double x = (t - grid.t0) / grid.dt;
    if (x < -1e-9 || x > static_cast<double>(grid.n - 1) + 1e-9)
      throw std::out_of_range("Path::interpolate: t outside covered window");
    const auto j = static_cast<Eigen::Index>(
        std::clamp(std::floor(x), 0.0, static_cast<double>(grid.n - 2)));
    const double w = std::clamp(x - static_cast<double>(j), 0.0, 1.0);
    return (1.0 - w) * values.col(j) + w * values.col(j + 1);
  }

  bool covers(double t) const {
    return t >= grid.t0 - 1e-9 && t <= grid.t_end() + 1e-9;
  }

  double sup_norm() const {
    return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff();
  }
};

/// Scalar helper: path with dim == 1 built from a callable.
template <typename F>
Path sample_scalar(const TimeGrid& g, F&& f) {
  Path p(g, 1);
  for (Eigen::Index j = 0; j < g.n; ++j) p.values(0, j) = f(g.node(j));
  return p;
}

}  // namespace mildsol
