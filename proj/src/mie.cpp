// SPDX-License-Identifier: Apache-2.0
#include "dieres/mie.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace dieres {

using namespace std::complex_literals;
using std::numbers::pi;

void ScatterConfig::validate() const {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(tau.real() > 0.0)) throw DomainError("Re tau must be positive");
  if (tau.imag() < 0.0) throw DomainError("Im tau must be non-negative");
  if (omega == 0.0) throw DomainError("omega must be nonzero");
  if (n_max && *n_max < 0) throw DomainError("n_max must be non-negative");
}

cplx ScatterConfig::omega_tau() const { return omega * std::sqrt(1.0 + tau); }

int default_n_max(const ScatterConfig& cfg) {
  return std::max(8, int(std::ceil(std::abs(cfg.delta * cfg.omega_tau()))) + 8);
}

int ScatterConfig::truncation() const { return n_max ? *n_max : default_n_max(*this); }

Denominator mie_denominator(Family family, int n, double delta, cplx tau, cplx omega) {
  const cplx a = delta * omega;
  const cplx b = delta * omega * std::sqrt(1.0 + tau);
  cplx first = sph_hankel1(n, a) * riccati_J(n, b);
  if (family == Family::TM) first /= 1.0 + tau;
  const cplx second = sph_bessel_j(n, b) * riccati_H(n, a);
  return {first - second, std::abs(first) + std::abs(second)};
}

MieTable::MieTable(const ScatterConfig& cfg, const IncidentWave& w, int n_max)
    : cfg_(cfg), wave_(w), n_max_(n_max) {
  if (n_max < 0 || n_max > 64) throw IndexError("truncation order must lie in [0, 64]");
  const std::size_t count = std::size_t(n_max) * (n_max + 2);
  gamma_.assign(count, 0.0);
  eta_.assign(count, 0.0);
  rte_.assign(n_max, 0.0);
  rtm_.assign(n_max, 0.0);
}

std::size_t MieTable::index(int n, int m) {
  if (n < 1 || std::abs(m) > n) throw IndexError("(n, m) outside the Mie table");
  return std::size_t(n * n - 1 + m + n);
}

void MieTable::scale(cplx s) {
  for (auto& g : gamma_) g *= s;
  for (auto& e : eta_) e *= s;
  for (auto& r : rte_) r *= s;
  for (auto& r : rtm_) r *= s;
}

MieTable mie_coefficients(const ScatterConfig& cfg, const IncidentWave& w) {
  cfg.validate();
  if (w.omega() != cfg.omega) throw DomainError("incident wave frequency differs from the configuration");
  const int N = cfg.truncation();
  MieTable t(cfg, w, N);
  const cplx a = cfg.delta * cfg.omega;
  const cplx b = cfg.delta * cfg.omega_tau();
  const CVec3 E0 = w.E0().cast<cplx>();
  cplx in = 1.0;
  for (int n = 1; n <= N; ++n) {
    in *= 1i;
    const cplx ja = sph_bessel_j(n, a), Ja = riccati_J(n, a);
    const cplx jb = sph_bessel_j(n, b), Jb = riccati_J(n, b);
    for (Family f : {Family::TE, Family::TM}) {
      const Denominator D = mie_denominator(f, n, cfg.delta, cfg.tau, cfg.omega);
      if (!(std::abs(D.value) >= 1e-14 * D.scale))
        throw ResonanceError(n, f, std::string("omega is numerically a ") + to_string(f) +
                                       " resonance at order n = " + std::to_string(n));
    }
    const cplx te = (-jb * Ja + Jb * ja) / mie_denominator(Family::TE, n, cfg.delta, cfg.tau, cfg.omega).value;
    const cplx tm = (Jb * ja / (1.0 + cfg.tau) - jb * Ja) /
                    mie_denominator(Family::TM, n, cfg.delta, cfg.tau, cfg.omega).value;
    t.radial_te(n) = te;
    t.radial_tm(n) = tm;
    const cplx pre = 4.0 * pi * in / std::sqrt(double(n) * (n + 1));
    for (int m = -n; m <= n; ++m) {
      const VectorHarmonics uv = vsh_UV(n, m, w.d());
      t.gamma(n, m) = pre * uv.V.dot(E0) * te;
      t.eta(n, m) = pre * uv.U.dot(E0) * tm;
    }
  }
  return t;
}

CVec3 scattered_field(const MieTable& t, const Vec3& x) {
  if (!(x.norm() > t.config().delta)) throw DomainError("scattered field is evaluated outside the sphere only");
  CVec3 E = CVec3::Zero();
  const cplx w = t.config().omega;
  for (int n = 1; n <= t.n_max(); ++n)
    for (int m = -n; m <= n; ++m) {
      const cplx g = t.gamma(n, m), e = t.eta(n, m);
      if (g != 0.0) E += g * multipole_field(Variant::radiating, Family::TE, n, m, w, x);
      if (e != 0.0) E += e * multipole_field(Variant::radiating, Family::TM, n, m, w, x);
    }
  return E;
}

CVec3 far_field(const MieTable& t, const UnitDirection& xhat) {
  CVec3 E = CVec3::Zero();
  const cplx w = t.config().omega;
  for (int n = 1; n <= t.n_max(); ++n) {
    const cplx f = -std::sqrt(double(n) * (n + 1)) / w * std::exp(-1i * (double(n + 1) * pi / 2.0));
    for (int m = -n; m <= n; ++m) {
      const VectorHarmonics uv = vsh_UV(n, m, xhat);
      E += f * (t.gamma(n, m) * uv.V + t.eta(n, m) * uv.U);
    }
  }
  return E;
}

CrossSectionReport cross_sections(const MieTable& t) {
  const cplx w = t.config().omega;
  if (w.imag() != 0.0) throw DomainError("cross sections are defined for real omega only");
  CrossSectionReport r;
  r.n_max_used = t.n_max();
  double tail = 0.0;
  for (int n = 1; n <= t.n_max(); ++n) {
    double s = 0.0;
    for (int m = -n; m <= n; ++m) s += std::norm(t.gamma(n, m)) + std::norm(t.eta(n, m));
    s *= double(n) * (n + 1) / std::norm(w);
    r.Qs += s;
    if (2 * n > t.n_max()) tail += s;
  }
  const CVec3 Einf = far_field(t, t.incident().d());
  r.Qext = (4.0 * pi / w.real()) * bdot(t.incident().E0().cast<cplx>(), Einf).imag();
  r.Qabs = r.Qext - r.Qs;
  r.converged = r.Qs == 0.0 || tail < 1e-12 * r.Qs;
  return r;
}

CoefficientAsymptotics coefficient_asymptotics(int n, const ScatterConfig& cfg) {
  if (n < 1) throw IndexError("coefficient asymptotics need n >= 1");
  const cplx a = cfg.delta * cfg.omega;
  const cplx b = cfg.delta * cfg.omega_tau();
  const cplx jb = sph_bessel_j(n, b), Jb = riccati_J(n, b);
  CoefficientAsymptotics out;
  out.predicted_TM = riccati_J(n, a) / riccati_H(n, a);
  if (n == 1) {
    out.predicted_TE = (1i / 3.0) * std::pow(a, 3) * (Jb - 2.0 * jb) / (Jb + jb);
    out.te_is_envelope = false;
  } else {
    out.predicted_TE = std::pow(a, 2 * n + 1) / (-Jb / double(n) - jb);
    out.te_is_envelope = true;
  }
  return out;
}

}  // namespace dieres
