// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <utility>

namespace dieres {

using cplx = std::complex<double>;
using Vec3 = Eigen::Vector3d;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;

// Plain bilinear products. Eigen's cross() conjugates complex results and
// its dot() conjugates the left operand.
inline CVec3 cross(const CVec3& a, const CVec3& b) {
  return CVec3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]);
}
inline cplx bdot(const CVec3& a, const CVec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

struct ModeIndex {
  int n = 1;
  int m = 0;
};

// Point on the unit sphere, stored both ways so that harmonics can use the
// angles and field assembly the Cartesian frame.
class UnitDirection {
 public:
  UnitDirection() = default;

  // Throws DomainError unless |x| = 1 within 1e-12.
  static UnitDirection from_cartesian(const Vec3& x);
  // theta in [0, pi], phi taken modulo 2 pi.
  static UnitDirection from_angles(double theta, double phi);
  // Normalizes any nonzero vector.
  static UnitDirection along(const Vec3& x);

  const Vec3& cartesian() const { return x_; }
  double theta() const { return theta_; }
  double phi() const { return phi_; }

 private:
  Vec3 x_{0.0, 0.0, 1.0};
  double theta_ = 0.0;
  double phi_ = 0.0;
};

cplx sph_bessel_j(int n, cplx z);
cplx sph_bessel_y(int n, cplx z);
cplx sph_hankel1(int n, cplx z);

// Derivatives use j_n' = j_{n-1} - (n+1)/z j_n.
cplx sph_bessel_j_prime(int n, cplx z);
cplx sph_hankel1_prime(int n, cplx z);

// J_n(z) = j_n(z) + z j_n'(z),  H_n(z) = h_n(z) + z h_n'(z).
cplx riccati_J(int n, cplx z);
cplx riccati_H(int n, cplx z);

enum class SmallArgKind { j, h, J, H };

// Two-term small-argument expansion, leading term times (1 + c t^2).
cplx small_arg_leading(int n, cplx t, SmallArgKind kind);

// s-th positive zero of j_n, memoized and thread safe.
double bessel_zero(int n, int s);

// Orthonormal spherical harmonic with the Condon-Shortley phase.
cplx sph_harmonic(int n, int m, const UnitDirection& xhat);

struct VectorHarmonics {
  CVec3 U;
  CVec3 V;
};

// U = grad_S Y / sqrt(n(n+1)), V = xhat x U. Regular at the poles.
VectorHarmonics vsh_UV(int n, int m, const UnitDirection& xhat);

// Constant vector grad(|x| Y_1^m(xhat)).
CVec3 dipole_gradient(int m);

double double_factorial(int n);

}  // namespace dieres
