// SPDX-License-Identifier: Apache-2.0
#include "dieres/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dieres {

using std::numbers::pi;

GaussLegendre::GaussLegendre(int n) : nodes(n), weights(n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre rule needs at least one node");
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1.0;
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    weights[i] = w;
    weights[n - 1 - i] = w;
  }
}

SphereQuadrature::SphereQuadrature(int n_theta, int n_phi)
    : degree_(std::min(2 * n_theta - 1, n_phi - 1)) {
  if (n_phi < 1) throw std::invalid_argument("sphere rule needs n_phi >= 1");
  GaussLegendre gl(n_theta);
  points_.reserve(std::size_t(n_theta) * n_phi);
  weights_.reserve(points_.capacity());
  const double dphi = 2.0 * pi / n_phi;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = std::acos(gl.nodes[i]);
    for (int j = 0; j < n_phi; ++j) {
      points_.push_back(UnitDirection::from_angles(theta, j * dphi));
      weights_.push_back(gl.weights[i] * dphi);
    }
  }
}

BallQuadrature::BallQuadrature(int n_radial, int n_theta, int n_phi)
    : sphere_(n_theta, n_phi) {
  GaussLegendre gl(n_radial);
  for (int k = 0; k < n_radial; ++k) {
    const double r = 0.5 * (gl.nodes[k] + 1.0);
    r_.push_back(r);
    wr_.push_back(0.5 * gl.weights[k] * r * r);
  }
  degree_ = std::min(2 * n_radial - 3, sphere_.exact_degree());
  points_.reserve(r_.size() * sphere_.size());
  weights_.reserve(points_.capacity());
  for (std::size_t k = 0; k < r_.size(); ++k) {
    for (std::size_t i = 0; i < sphere_.size(); ++i) {
      points_.push_back(r_[k] * sphere_.point(i).cartesian());
      weights_.push_back(wr_[k] * sphere_.weight(i));
    }
  }
}

}  // namespace dieres
