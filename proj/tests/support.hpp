// SPDX-License-Identifier: Apache-2.0
// Shared helpers for the unit and acceptance tests: regression slopes and
// finite-difference differential operators used as independent oracles.
#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "dieres/specfun.hpp"

namespace testsupport {

using dieres::cplx;
using dieres::CVec3;
using dieres::Vec3;

inline double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Least-squares slope of log y against log x.
inline double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

using VField = std::function<CVec3(const Vec3&)>;

// Jacobian column d F / d x_k by central differences.
inline CVec3 partial(const VField& F, const Vec3& x, int k, double h) {
  Vec3 xp = x, xm = x;
  xp[k] += h;
  xm[k] -= h;
  return (F(xp) - F(xm)) / (2.0 * h);
}

inline CVec3 fd_curl(const VField& F, const Vec3& x, double h) {
  const CVec3 d0 = partial(F, x, 0, h), d1 = partial(F, x, 1, h), d2 = partial(F, x, 2, h);
  return CVec3(d1[2] - d2[1], d2[0] - d0[2], d0[1] - d1[0]);
}

inline cplx fd_div(const VField& F, const Vec3& x, double h) {
  return partial(F, x, 0, h)[0] + partial(F, x, 1, h)[1] + partial(F, x, 2, h)[2];
}

inline CVec3 fd_laplacian(const VField& F, const Vec3& x, double h) {
  CVec3 acc = -6.0 * F(x);
  for (int k = 0; k < 3; ++k) {
    Vec3 xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    acc += F(xp) + F(xm);
  }
  return acc / (h * h);
}

}  // namespace testsupport
