// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "dieres/errors.hpp"
#include "dieres/specfun.hpp"

namespace dieres {

enum class Variant { entire, radiating };
enum class HarmonicKind { Eh, curlEh };

// Plane wave E0 exp(i omega d.x). Construction validates |d| = |E0| = 1 and
// d.E0 = 0 to 1e-12.
class IncidentWave {
 public:
  IncidentWave(const Vec3& d, const Vec3& E0, cplx omega);

  const UnitDirection& d() const { return d_; }
  const Vec3& E0() const { return E0_; }
  cplx omega() const { return omega_; }

 private:
  UnitDirection d_;
  Vec3 E0_;
  cplx omega_;
};

struct FieldSample {
  Vec3 point;
  CVec3 value;
};

CVec3 multipole_field(Variant variant, Family family, int n, int m, cplx k, const Vec3& x);

CVec3 harmonic_exterior(HarmonicKind kind, int n, int m, const Vec3& x);

CVec3 farfield_pattern(Family family, int n, int m, cplx omega, const UnitDirection& xhat);

CVec3 plane_wave(const IncidentWave& w, const Vec3& x);

CVec3 jacobi_anger_partial(const IncidentWave& w, int N, const Vec3& x);

}  // namespace dieres
