// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <type_traits>
#include <vector>

#include "dieres/specfun.hpp"

namespace dieres {

struct GaussLegendre {
  std::vector<double> nodes;    // on [-1, 1]
  std::vector<double> weights;
  explicit GaussLegendre(int n);
};

// Product rule on the unit sphere: Gauss-Legendre in cos(theta) times the
// trapezoidal rule in phi. Exact for spherical harmonics of degree
// <= min(2 n_theta - 1, n_phi - 1).
class SphereQuadrature {
 public:
  SphereQuadrature(int n_theta = 64, int n_phi = 128);

  std::size_t size() const { return points_.size(); }
  const UnitDirection& point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  int exact_degree() const { return degree_; }

  template <class F>
  auto integrate(F&& f) const {
    using R = std::decay_t<std::invoke_result_t<F&, const UnitDirection&>>;
    R acc = f(points_[0]) * weights_[0];
    for (std::size_t i = 1; i < points_.size(); ++i) acc += f(points_[i]) * weights_[i];
    return acc;
  }

 private:
  std::vector<UnitDirection> points_;
  std::vector<double> weights_;
  int degree_;
};

// Unit ball: radial Gauss-Legendre on [0, 1] with r^2 folded into the
// weights, times a SphereQuadrature.
class BallQuadrature {
 public:
  BallQuadrature(int n_radial = 32, int n_theta = 64, int n_phi = 128);

  std::size_t size() const { return points_.size(); }
  const Vec3& point(std::size_t i) const { return points_[i]; }
  double weight(std::size_t i) const { return weights_[i]; }
  // Total polynomial degree in Cartesian coordinates integrated exactly.
  int exact_degree() const { return degree_; }
  const std::vector<double>& radial_nodes() const { return r_; }
  const std::vector<double>& radial_weights() const { return wr_; }
  const SphereQuadrature& sphere() const { return sphere_; }

  template <class F>
  auto integrate(F&& f) const {
    using R = std::decay_t<std::invoke_result_t<F&, const Vec3&>>;
    R acc = f(points_[0]) * weights_[0];
    for (std::size_t i = 1; i < points_.size(); ++i) acc += f(points_[i]) * weights_[i];
    return acc;
  }

 private:
  std::vector<double> r_, wr_;
  SphereQuadrature sphere_;
  std::vector<Vec3> points_;
  std::vector<double> weights_;
  int degree_;
};

}  // namespace dieres
