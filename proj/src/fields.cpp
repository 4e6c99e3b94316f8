// SPDX-License-Identifier: Apache-2.0
#include "dieres/fields.hpp"

#include <cmath>
#include <numbers>

namespace dieres {

using namespace std::complex_literals;

IncidentWave::IncidentWave(const Vec3& d, const Vec3& E0, cplx omega) : E0_(E0), omega_(omega) {
  if (std::abs(d.norm() - 1.0) > 1e-12) throw DomainError("propagation direction d must be a unit vector");
  if (std::abs(E0.norm() - 1.0) > 1e-12) throw DomainError("polarization E0 must be a unit vector");
  if (std::abs(d.dot(E0)) > 1e-12) throw DomainError("polarization must be orthogonal to d");
  d_ = UnitDirection::from_cartesian(d);
}

CVec3 multipole_field(Variant variant, Family family, int n, int m, cplx k, const Vec3& x) {
  if (n < 1) throw IndexError("multipole fields need n >= 1");
  if (std::abs(m) > n) throw IndexError("|m| > n in multipole field");
  const double r = x.norm();
  const bool entire = variant == Variant::entire;
  if (r == 0.0) {
    if (!entire) throw DomainError("radiating multipole field is singular at x = 0");
    if (family == Family::TM && k == 0.0) throw DomainError("TM field needs k != 0");
    if (family == Family::TE || n > 1) return CVec3::Zero();
    return (2i / 3.0) * dipole_gradient(m);
  }
  const UnitDirection xh = UnitDirection::along(x);
  const VectorHarmonics uv = vsh_UV(n, m, xh);
  const double c = std::sqrt(double(n) * (n + 1));
  const cplx z = k * r;
  if (family == Family::TE) {
    const cplx zn = entire ? sph_bessel_j(n, z) : sph_hankel1(n, z);
    return (-c * zn) * uv.V;
  }
  if (k == 0.0) throw DomainError("TM field needs k != 0");
  cplx zn, Zn;
  if (entire) {
    zn = sph_bessel_j(n, z);
    Zn = riccati_J(n, z);
  } else {
    zn = sph_hankel1(n, z);
    Zn = riccati_H(n, z);
  }
  const cplx Y = sph_harmonic(n, m, xh);
  return (-c * Zn / (1i * z)) * uv.U +
         (-double(n) * (n + 1) * zn * Y / (1i * z)) * xh.cartesian().cast<cplx>();
}

CVec3 harmonic_exterior(HarmonicKind kind, int n, int m, const Vec3& x) {
  if (n < 1) throw IndexError("exterior harmonic fields need n >= 1");
  const double r = x.norm();
  if (r == 0.0) throw DomainError("exterior harmonic field is singular at x = 0");
  const UnitDirection xh = UnitDirection::along(x);
  const VectorHarmonics uv = vsh_UV(n, m, xh);
  const double c = std::sqrt(double(n) * (n + 1));
  if (kind == HarmonicKind::Eh) return (-c / std::pow(r, n + 1)) * uv.V;
  const double rp = std::pow(r, n + 2);
  const cplx Y = sph_harmonic(n, m, xh);
  return (double(n) * (n + 1) / rp * Y) * xh.cartesian().cast<cplx>() - (c * n / rp) * uv.U;
}

CVec3 farfield_pattern(Family family, int n, int m, cplx omega, const UnitDirection& xhat) {
  if (omega == 0.0) throw DomainError("far-field pattern needs omega != 0");
  const VectorHarmonics uv = vsh_UV(n, m, xhat);
  const cplx f = -std::sqrt(double(n) * (n + 1)) / omega *
                 std::exp(-1i * (double(n + 1) * std::numbers::pi / 2.0));
  return f * (family == Family::TE ? uv.V : uv.U);
}

CVec3 plane_wave(const IncidentWave& w, const Vec3& x) {
  return std::exp(1i * w.omega() * w.d().cartesian().dot(x)) * w.E0().cast<cplx>();
}

CVec3 jacobi_anger_partial(const IncidentWave& w, int N, const Vec3& x) {
  if (N < 1 || N > 64) throw IndexError("Jacobi-Anger truncation must lie in [1, 64]");
  const CVec3 E0 = w.E0().cast<cplx>();
  CVec3 sum = CVec3::Zero();
  cplx in = 1.0;
  for (int n = 1; n <= N; ++n) {
    in *= 1i;
    const cplx pre = -4.0 * std::numbers::pi * in / std::sqrt(double(n) * (n + 1));
    for (int m = -n; m <= n; ++m) {
      const VectorHarmonics uv = vsh_UV(n, m, w.d());
      // Eigen's dot conjugates its left operand
      const cplx aV = uv.V.dot(E0);
      const cplx aU = uv.U.dot(E0);
      sum += pre * (multipole_field(Variant::entire, Family::TE, n, m, w.omega(), x) * aV +
                    multipole_field(Variant::entire, Family::TM, n, m, w.omega(), x) * aU);
    }
  }
  return sum;
}

}  // namespace dieres
