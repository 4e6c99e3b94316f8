// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <numbers>

#include "dieres/multipole.hpp"
#include "dieres/quasistatic.hpp"

using namespace dieres;
using namespace std::complex_literals;
using std::numbers::pi;

namespace {

const BallQuadrature& ball() {
  static const BallQuadrature q(24, 16, 32);
  return q;
}

DecomposedField bubble(const CVec3& c) {
  DecomposedField f;
  f.curl_potential = [c](const Vec3& x) -> CVec3 { return (1 - x.squaredNorm()) * c; };
  f.curl_degree = 2;
  return f;
}

// grad of chi = (1 - r^2) g(x), which vanishes on the sphere
CVec3 grad_chi(const Vec3& x, double (*g)(const Vec3&), Vec3 (*dg)(const Vec3&)) {
  const double b = 1 - x.squaredNorm();
  return (b * dg(x) - 2 * g(x) * x).cast<cplx>();
}

}  // namespace

TEST_CASE("magnetic moments") {
  const CVec3 c(1.0, -0.5i, 2.0);
  const auto M1 = magnetic_moment(1, bubble(c), ball());
  CHECK((M1.contract(Vec3::Zero()) - 8 * pi / 15 * c).norm() < 1e-12);
  CHECK(M1.rank() == 1);
  const auto M2 = magnetic_moment(2, bubble(c), ball());
  CHECK(M2.rank() == 2);
  CHECK(M2.max_abs() < 1e-14);
  CHECK(magnetic_moment(4, bubble(c), ball()).size() == 81);
  CHECK_THROWS_AS(magnetic_moment(0, bubble(c), ball()), IndexError);
  CHECK_THROWS_AS(magnetic_moment(5, bubble(c), ball()), IndexError);

  const auto zero = MomentTensor(MomentKind::magnetic, 0);
  CHECK(zero.max_abs() == 0.0);

  for (int j = -1; j <= 1; ++j) {
    DecomposedField f;
    f.curl_potential = [j](const Vec3& x) { return mode_potential(j, x); };
    f.check_boundary();
    const auto M = magnetic_moment(1, f, BallQuadrature(32, 16, 32));
    CHECK((M.contract(Vec3::Zero()) - 4 / pi * dipole_gradient(j)).norm() < 1e-10);
    // doubling the orders leaves the moments alone
    for (int l = 1; l <= 3; ++l) {
      const auto a = magnetic_moment(l, f, BallQuadrature(32, 16, 32));
      const auto b = magnetic_moment(l, f, BallQuadrature(64, 32, 64));
      for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-10);
    }
  }

  DecomposedField leaky;
  leaky.curl_potential = [](const Vec3&) { return CVec3(1, 0, 0); };
  CHECK_THROWS_AS(leaky.check_boundary(), DomainError);

  auto deep = bubble(c);
  deep.curl_degree = 80;
  CHECK_FALSE(magnetic_moment(2, deep, ball()).warning.empty());
  CHECK(magnetic_moment(2, bubble(c), ball()).warning.empty());
}

TEST_CASE("electric moments") {
  DecomposedField f;
  f.grad_potential_gradient = [](const Vec3&) { return CVec3(1, 0, 0); };
  const auto Q0 = electric_moment(0, f, ball());
  CHECK((Q0.contract(Vec3::Zero()) - CVec3(4 * pi / 3, 0, 0)).norm() < 1e-12);

  f.grad_potential_gradient = [](const Vec3& x) { return CVec3(x[1], x[0], 0); };
  const auto Q1 = electric_moment(1, f, ball());
  REQUIRE(Q1.rank() == 2);
  for (int i = 0; i < 3; ++i)
    for (int k = 0; k < 3; ++k) {
      const double expected = (i == 0 && k == 1) || (i == 1 && k == 0) ? 4 * pi / 15 : 0.0;
      CHECK(std::abs(Q1.at({i, k}) - expected) < 1e-12);
    }
  CHECK_THROWS_AS(electric_moment(3, f, ball()), IndexError);
  CHECK_THROWS_AS(Q1.at({0, 3}), IndexError);
  CHECK_THROWS_AS(Q1.at({0}), IndexError);

  // TE eigenmodes have no gradient part
  DecomposedField te;
  te.curl_potential = [](const Vec3& x) { return mode_potential(0, x); };
  for (int l = 0; l <= 2; ++l) CHECK(electric_moment(l, te, ball()).max_abs() <= 1e-10);
}

TEST_CASE("gauge invariance of the magnetic moments") {
  const CVec3 c(0.3, 1.0, -0.7);
  const auto base = bubble(c);
  // chi = (1 - r^2) x1 x2 x3 is orthogonal to every polynomial of degree <= 3
  auto odd = base;
  odd.curl_potential = [c](const Vec3& x) -> CVec3 {
    return (1 - x.squaredNorm()) * c +
           grad_chi(x, [](const Vec3& y) { return y[0] * y[1] * y[2]; },
                    [](const Vec3& y) { return Vec3(y[1] * y[2], y[0] * y[2], y[0] * y[1]); });
  };
  odd.check_boundary();
  for (int l = 1; l <= 4; ++l) {
    const auto a = magnetic_moment(l, base, ball()), b = magnetic_moment(l, odd, ball());
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < 1e-12);
  }
  // for a generic chi the moments of order >= 2 shift by terms along xhat,
  // which the amplitude removes
  auto generic = base;
  generic.curl_potential = [c](const Vec3& x) -> CVec3 {
    return (1 - x.squaredNorm()) * c +
           grad_chi(x, [](const Vec3& y) { return y[0] + y[1] * y[1] + y[2] * y[0] * y[0]; },
                    [](const Vec3& y) { return Vec3(1 + 2 * y[0] * y[2], 2 * y[1], y[0] * y[0]); });
  };
  generic.check_boundary();
  std::vector<MomentTensor> ma, mb;
  for (int l = 1; l <= 4; ++l) {
    ma.push_back(magnetic_moment(l, base, ball()));
    mb.push_back(magnetic_moment(l, generic, ball()));
  }
  for (int l = 0; l <= 3; ++l) {
    ma.emplace_back(MomentKind::electric, l);
    mb.emplace_back(MomentKind::electric, l);
  }
  CHECK((ma[0].contract(Vec3::Zero()) - mb[0].contract(Vec3::Zero())).norm() < 1e-12);
  const auto xh = UnitDirection::from_angles(0.7, 2.1);
  const CVec3 A = amplitude_from_moments(ma, 0.2, 25.0, 2.0, xh, Truncation::orderL, 4);
  const CVec3 B = amplitude_from_moments(mb, 0.2, 25.0, 2.0, xh, Truncation::orderL, 4);
  CHECK((A - B).norm() < 1e-12 * A.norm());
}

TEST_CASE("amplitude assembly") {
  const auto xh = UnitDirection::from_angles(1.2, -0.4);
  const CVec3 x = xh.cartesian().cast<cplx>();
  std::vector<MomentTensor> ms;
  ms.emplace_back(MomentKind::magnetic, 1);
  ms.emplace_back(MomentKind::electric, 0);
  CHECK(amplitude_from_moments(ms, 0.1, 100.0, 3.0, xh, Truncation::dipole_pair).norm() == 0.0);
  ms[0][0] = 1.0;
  ms[0][2] = 2i;
  ms[1][1] = -0.5;
  ms[1][2] = 3.0;
  const CVec3 A = amplitude_from_moments(ms, 0.1, 100.0, 3.0, xh, Truncation::dipole_pair);
  CHECK(std::abs(bdot(x, A)) < 1e-15);
  CHECK_THROWS_AS(amplitude_from_moments(ms, 0.1, 100.0, 3.0, xh, Truncation::order4), MissingMoment);
  CHECK_THROWS_AS(amplitude_from_moments({}, 0.1, 100.0, 3.0, xh, Truncation::dipole_pair), MissingMoment);
  ms.emplace_back(MomentKind::magnetic, 2);
  ms.emplace_back(MomentKind::electric, 1);
  ms[2][4] = 1.0;
  ms[3][5] = 1.0;
  const CVec3 B = amplitude_from_moments(ms, 0.1, 100.0, 3.0, xh, Truncation::order4);
  CHECK(std::abs(bdot(x, B)) < 1e-15);
  CHECK((B - A).norm() > 0.0);
  CHECK((amplitude_from_moments(ms, 0.1, 100.0, 3.0, xh, Truncation::orderL, 2) - B).norm() == 0.0);

  // the dipole pair reproduces the dipole far field of the resonant moments
  ContrastModel model;
  const double delta = 0.05, omega = 3.0;
  const IncidentWave w(Vec3(0, 0, 1), Vec3(0, 1, 0), omega);
  const auto rm = resonant_moments(w, omega, delta, model);
  const auto dp = dipole_approximation(w, omega, delta, model);
  const cplx tau = model.evaluate(delta);
  std::vector<MomentTensor> pair;
  pair.emplace_back(MomentKind::magnetic, 1);
  pair.emplace_back(MomentKind::electric, 0);
  for (int i = 0; i < 3; ++i) {
    pair[0][i] = rm.M1hat[i];
    pair[1][i] = dp.p[i] / (tau * std::pow(delta, 3));
  }
  const DipolePair mapped{dp.p, -1i * delta * omega * tau * std::pow(delta, 3) * rm.M1hat};
  const CVec3 from_moments = amplitude_from_moments(pair, delta, tau, omega, xh, Truncation::dipole_pair);
  const CVec3 from_dipoles = dipole_far_field(mapped, omega, xh);
  CHECK((from_moments - from_dipoles).norm() < 1e-10 * from_dipoles.norm());
}
