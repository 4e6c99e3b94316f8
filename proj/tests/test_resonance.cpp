// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <numbers>

#include "dieres/resonance.hpp"
#include "support.hpp"

using namespace dieres;
using namespace std::complex_literals;
using std::numbers::pi;
using testsupport::loglog_slope;

namespace {

ContrastModel unit_model(std::vector<double> laurent = {}) {
  ContrastModel m;
  m.c_tau = 1.0;
  m.laurent = std::move(laurent);
  return m;
}

// TE n = 1 roots for tau = delta^-2 at delta = 0.02, 0.04, ..., 0.20, from a
// 30-digit Newton solve of the same denominator.
const cplx kReferenceRoots[] = {
    {3.13971357138, -7.8553e-5}, {3.13414539404, -6.1894e-4}, {3.12508527842, -0.0020378},
    {3.11283133147, -0.0046714}, {3.09774595608, -0.0087554}, {3.08021841259, -0.014422},
    {3.06063333499, -0.021711},  {3.03934851330, -0.030584},  {3.01668214921, -0.040948},
    {2.99290790011, -0.052671}};

}  // namespace

TEST_CASE("Muller on polynomials") {
  auto cube = [](cplx z) { return z * z * z - 1.0; };
  const auto r = muller_root(cube, 0.8, 1.2, 1.0 + 0.1i);
  CHECK(std::abs(r.root - 1.0) < 1e-12);
  CHECK(r.residual <= 1e-12);

  const auto q = muller_root([](cplx z) { return z * z + 1.0; }, 0.1 + 0.9i, -0.1 + 1.1i, 1.05i);
  CHECK(std::abs(q.root - 1i) < 1e-12);

  // convergence order over the last three iterates
  const auto s = muller_root([](cplx z) { return std::exp(z) - 2.0; }, 0.0, 1.0, 0.5, 1e-300, 50);
  std::vector<double> e;
  for (cplx z : s.history) e.push_back(std::abs(z - std::log(2.0)));
  std::vector<double> useful;
  for (double v : e)
    if (v > 1e-15) useful.push_back(v);
  REQUIRE(useful.size() >= 3);
  const std::size_t k = useful.size() - 1;
  const double order = std::log(useful[k] / useful[k - 1]) / std::log(useful[k - 1] / useful[k - 2]);
  CHECK(order >= 1.8);

  // a linear function makes the parabola degenerate
  const auto lin = muller_root([](cplx z) { return 2.0 * z - 3.0; }, 0.0, 1.0, 2.0);
  CHECK(std::abs(lin.root - 1.5) < 1e-14);

  CHECK_THROWS_AS(muller_root([](cplx) { return cplx(1.0); }, 0.0, 1.0, 2.0), NoConvergence);
  CHECK_THROWS_AS(muller_root(cube, 1.0, 1.0, 2.0), DomainError);
  try {
    muller_root([](cplx z) { return std::exp(z); }, 0.0, 1.0, 2.0, 1e-12, 5);
  } catch (const NoConvergence& e) {
    CHECK(std::isfinite(std::abs(e.last_iterate())));
  }
}

TEST_CASE("contrast model and predictions") {
  const auto m = unit_model({0.5, 2.0});
  CHECK(std::abs(m.evaluate(0.1) - (100.0 + 5.0 + 2.0)) < 1e-12);
  ContrastModel bad;
  bad.c_tau = -1.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);

  CHECK(std::abs(quasi_static_prediction(Family::TE, 1, 1, unit_model(), 0.0) - pi) < 1e-14);
  CHECK(std::abs(quasi_static_prediction(Family::TM, 1, 1, unit_model(), 0.0) - 4.493409457909064) < 1e-12);
  ContrastModel four;
  four.c_tau = 4.0;
  CHECK(std::abs(quasi_static_prediction(Family::TE, 1, 1, four, 0.0) - pi / 2) < 1e-14);
  CHECK(std::abs(quasi_static_prediction(Family::TE, 1, 1, unit_model(), 0.1, Prediction::finite_tau) - pi) < 1e-13);
  CHECK_THROWS_AS(quasi_static_prediction(Family::TE, 0, 1, unit_model(), 0.0), IndexError);

  CHECK(first_order_correction(pi, unit_model(), 0.1) == pi);
  CHECK(std::abs(first_order_correction(pi, unit_model({1.0}), 0.1) - 2.9845130209103035) < 1e-12);
}

TEST_CASE("limiting zero conditions of the resonance functions") {
  for (double t : {0.4, 1.3, 2.9, 5.0}) CHECK(std::abs(riccati_J(1, t) + sph_bessel_j(1, t) - t * sph_bessel_j(0, t)) < 1e-14);
  // (delta omega)^2 F_TE -> -i (J_1(omega) + j_1(omega)) as delta -> 0 with tau = delta^-2
  const cplx w = 2.3;
  std::vector<double> ds{0.02, 0.01, 0.005}, err;
  for (double d : ds) {
    const cplx F = resonance_function(Family::TE, 1, d, 1 / (d * d), w);
    const cplx lim = -1i * (riccati_J(1, w * std::sqrt(1 + d * d)) + sph_bessel_j(1, w * std::sqrt(1 + d * d)));
    err.push_back(std::abs(std::pow(d * w, 2) * F - lim));
  }
  CHECK(err[2] < err[0]);
  CHECK(err[2] < 1e-3);
  // the TM limit vanishes with j_1
  const double k = bessel_zero(1, 1);
  const double d = 1e-3;
  const cplx tm = resonance_function(Family::TM, 1, d, 1 / (d * d), k / std::sqrt(1 + d * d));
  const cplx tm_off = resonance_function(Family::TM, 1, d, 1 / (d * d), 1.1 * k);
  CHECK(std::abs(tm) < 1e-2 * std::abs(tm_off));
}

TEST_CASE("TE dipole resonance at delta = 0.15") {
  const double d = 0.15;
  const auto r = find_resonance(Family::TE, 1, 1, d, unit_model());
  const auto F = [&](cplx w) { return resonance_function(Family::TE, 1, d, 1 / (d * d), w); };
  CHECK(r.residual <= 1e-12);
  CHECK(std::abs(F(r.omega)) <= 1e-12);
  CHECK(r.iterations <= 15);
  CHECK(r.omega.real() > 0);
  CHECK(r.omega.imag() < 0);
  CHECK(r.omega.imag() > -0.1);
  // 30-digit Newton solve of the same denominator
  CHECK(std::abs(r.omega - cplx(3.05018248617416239, -0.0259543994027477238)) < 1e-10);
  CHECK(std::abs(F(-std::conj(r.omega))) <= 10 * std::max(r.residual, 1e-16));
  // no roots on the real axis near the resonance
  double smallest = 1e300;
  for (int i = 0; i <= 200; ++i) smallest = std::min(smallest, std::abs(F(2.9 + 0.3 * i / 200.0)));
  CHECK(smallest > 1e3 * r.residual);
  CHECK(smallest > 1e-3);
}

TEST_CASE("mirrored roots are reflected") {
  const double d = 0.1;
  const auto r = find_resonance(Family::TE, 1, 1, d, unit_model(), 1e-12, -3.12 - 0.002i);
  CHECK(r.omega.real() > 0);
  CHECK(std::abs(r.omega - kReferenceRoots[4]) < 1e-6);
  CHECK(r.residual <= 1e-12);
}

TEST_CASE("regime and sweep") {
  CHECK_THROWS_AS(find_resonance(Family::TE, 1, 1, 1.2, unit_model()), RegimeError);
  std::vector<double> ds;
  for (int i = 1; i <= 10; ++i) ds.push_back(0.02 * i);
  const auto sweep = sweep_resonance(Family::TE, 1, 1, ds, unit_model());
  REQUIRE(sweep.size() == 10);
  std::vector<double> err;
  for (std::size_t i = 0; i < sweep.size(); ++i) {
    REQUIRE(sweep[i].root);
    const cplx w = sweep[i].root->omega;
    CHECK(std::abs(w - kReferenceRoots[i]) < 1e-6);
    CHECK(w.imag() < 0);
    if (i > 0) CHECK(w.real() < sweep[i - 1].root->omega.real());
    err.push_back(std::abs(w - pi));
    CHECK(std::abs(sweep[i].prediction - pi) < 1e-14);
  }
  const double slope = loglog_slope(ds, err);
  CHECK(slope > 1.8);
  CHECK(slope < 2.2);

  CHECK_THROWS_AS(sweep_resonance(Family::TE, 1, 1, {0.1, 0.1}, unit_model()), DomainError);
  const auto partial = sweep_resonance(Family::TE, 1, 1, {0.1, 1.5}, unit_model());
  CHECK(partial[0].root);
  CHECK_FALSE(partial[1].root);
  CHECK_FALSE(partial[1].error.empty());
}

TEST_CASE("first-order correction is accurate to second order") {
  const auto model = unit_model({0.5});
  std::vector<double> ds{0.02, 0.04, 0.06, 0.08, 0.1}, err;
  for (double d : ds) {
    const auto r = find_resonance(Family::TE, 1, 1, d, model);
    err.push_back(std::abs(r.omega - first_order_correction(pi, model, d)));
  }
  const double slope = loglog_slope(ds, err);
  CHECK(slope > 1.8);
  CHECK(slope < 2.2);
}

TEST_CASE("TM and higher families; clustering") {
  const double d = 0.05;
  const auto tm = find_resonance(Family::TM, 1, 1, d, unit_model());
  CHECK(std::abs(tm.omega - 4.493409457909064) < 0.05);
  CHECK(tm.omega.imag() < 0);
  CHECK(tm.residual <= 1e-12);
  const auto te2 = find_resonance(Family::TE, 2, 1, d, unit_model());
  CHECK(std::abs(te2.omega - 4.493409457909064) < 0.05);

  const auto roots = find_resonance_cluster(Family::TE, 1, 1, d, unit_model(), 3);
  CHECK(roots.size() == 1);
  const auto merged = cluster_roots({1.0, 1.0 + 1e-10, 2.0, 1.0 - 1e-9i});
  CHECK(merged.size() == 2);
}
