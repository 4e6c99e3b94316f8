// SPDX-License-Identifier: Apache-2.0
#include "dieres/specfun.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "dieres/errors.hpp"

namespace dieres {

using namespace std::complex_literals;
using std::numbers::pi;

namespace {

constexpr double kOverflowIm = 700.0;
constexpr int kMaxOrder = 64;

void check_order(int n) {
  if (n < 0 || n > kMaxOrder)
    throw IndexError("spherical Bessel order " + std::to_string(n) + " outside [0, 64]");
}

void check_overflow(cplx z) {
  if (std::abs(z.imag()) > kOverflowIm)
    throw OverflowError("|Im z| too large for double precision spherical Bessel evaluation");
}

cplx j_series(int n, cplx z) {
  cplx pre = 1.0;
  for (int k = 1; k <= n; ++k) pre *= z / double(2 * k + 1);
  const cplx q = -0.5 * z * z;
  cplx term = 1.0, sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= q / double(k * (2 * n + 2 * k + 1));
    sum += term;
    if (std::abs(term) < 1e-17 * std::abs(sum)) break;
  }
  return pre * sum;
}

cplx j_closed(int n, cplx z) {
  const cplx s = std::sin(z), c = std::cos(z);
  switch (n) {
    case 0:
      return s / z;
    case 1:
      return s / (z * z) - c / z;
    default:
      return (3.0 / (z * z) - 1.0) * s / z - 3.0 * c / (z * z);
  }
}

// Miller's downward recurrence normalized against j_0 or j_1.
cplx j_miller(int n, cplx z) {
  const double az = std::abs(z);
  const double top = std::max(double(n), az);
  const int start = int(top + 20.0 + 3.0 * std::sqrt(top));
  cplx fp1 = 0.0, f = 1e-30, fn = 0.0, f0 = 0.0, f1 = 0.0;
  for (int k = start; k >= 1; --k) {
    cplx fm1 = double(2 * k + 1) / z * f - fp1;
    fp1 = f;
    f = fm1;
    if (std::abs(f) > 1e200) {
      f *= 1e-200;
      fp1 *= 1e-200;
      fn *= 1e-200;
    }
    if (k - 1 == n) fn = f;
    if (k == 1) f1 = fp1;
  }
  f0 = f;
  const cplx j0 = std::sin(z) / z;
  const cplx j1 = j0 / z - std::cos(z) / z;
  if (std::abs(j0) >= std::abs(j1))
    return fn * (j0 / f0);
  return fn * (j1 / f1);
}

cplx y_upward(int n, cplx z) {
  const cplx s = std::sin(z), c = std::cos(z);
  cplx y0 = -c / z;
  if (n == 0) return y0;
  cplx y1 = -c / (z * z) - s / z;
  for (int k = 1; k < n; ++k) {
    cplx y2 = double(2 * k + 1) / z * y1 - y0;
    y0 = y1;
    y1 = y2;
  }
  return y1;
}

cplx h_upward(int n, cplx z) {
  const cplx e = std::exp(1i * z);
  cplx h0 = -1i * e / z;
  if (n == 0) return h0;
  cplx h1 = -e * (z + 1i) / (z * z);
  for (int k = 1; k < n; ++k) {
    cplx h2 = double(2 * k + 1) / z * h1 - h0;
    h0 = h1;
    h1 = h2;
  }
  return h1;
}

cplx finite_or_throw(cplx v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw OverflowError(std::string(what) + " overflowed");
  return v;
}

}  // namespace

UnitDirection UnitDirection::from_cartesian(const Vec3& x) {
  if (std::abs(x.norm() - 1.0) > 1e-12) throw DomainError("direction is not a unit vector");
  UnitDirection u;
  u.x_ = x;
  u.theta_ = std::atan2(std::hypot(x[0], x[1]), x[2]);
  double p = std::atan2(x[1], x[0]);
  if (p < 0.0) p += 2.0 * pi;
  u.phi_ = p;
  return u;
}

UnitDirection UnitDirection::from_angles(double theta, double phi) {
  if (!(theta >= 0.0 && theta <= pi)) throw DomainError("polar angle outside [0, pi]");
  UnitDirection u;
  u.theta_ = theta;
  u.phi_ = std::fmod(phi, 2.0 * pi);
  if (u.phi_ < 0.0) u.phi_ += 2.0 * pi;
  const double st = std::sin(theta);
  u.x_ = Vec3(st * std::cos(phi), st * std::sin(phi), std::cos(theta));
  return u;
}

UnitDirection UnitDirection::along(const Vec3& x) {
  const double r = x.norm();
  if (r == 0.0) throw DomainError("direction of the zero vector");
  return from_cartesian(x / r);
}

cplx sph_bessel_j(int n, cplx z) {
  check_order(n);
  check_overflow(z);
  if (z == 0.0) return n == 0 ? 1.0 : 0.0;
  if (std::abs(z) < 2.0) return j_series(n, z);
  if (n <= 2) return j_closed(n, z);
  return finite_or_throw(j_miller(n, z), "j_n");
}

cplx sph_bessel_y(int n, cplx z) {
  check_order(n);
  check_overflow(z);
  if (z == 0.0) throw DomainError("y_n has a pole at z = 0");
  return finite_or_throw(y_upward(n, z), "y_n");
}

cplx sph_hankel1(int n, cplx z) {
  check_order(n);
  check_overflow(z);
  if (z == 0.0) throw DomainError("h_n has a pole at z = 0");
  // Summing j + i y keeps the small real part exact for near-real small z;
  // for Im z >= 1 the two grow while h decays, so recur on h directly.
  if (z.imag() < 1.0) return finite_or_throw(sph_bessel_j(n, z) + 1i * y_upward(n, z), "h_n");
  return finite_or_throw(h_upward(n, z), "h_n");
}

cplx sph_bessel_j_prime(int n, cplx z) {
  check_order(n);
  if (n == 0) return -sph_bessel_j(1, z);
  if (z == 0.0) return n == 1 ? 1.0 / 3.0 : 0.0;
  return sph_bessel_j(n - 1, z) - double(n + 1) / z * sph_bessel_j(n, z);
}

cplx sph_hankel1_prime(int n, cplx z) {
  check_order(n);
  if (n == 0) return -sph_hankel1(1, z);
  return sph_hankel1(n - 1, z) - double(n + 1) / z * sph_hankel1(n, z);
}

cplx riccati_J(int n, cplx z) {
  check_order(n);
  if (n == 0) return sph_bessel_j(0, z) - z * sph_bessel_j(1, z);
  return z * sph_bessel_j(n - 1, z) - double(n) * sph_bessel_j(n, z);
}

cplx riccati_H(int n, cplx z) {
  check_order(n);
  if (z == 0.0) throw DomainError("H_n has a pole at z = 0");
  if (n == 0) return sph_hankel1(0, z) - z * sph_hankel1(1, z);
  return z * sph_hankel1(n - 1, z) - double(n) * sph_hankel1(n, z);
}

double double_factorial(int n) {
  double r = 1.0;
  for (int k = n; k > 1; k -= 2) r *= k;
  return r;
}

cplx small_arg_leading(int n, cplx t, SmallArgKind kind) {
  const double n_ = n;
  switch (kind) {
    case SmallArgKind::j:
      return std::pow(t, n) / double_factorial(2 * n + 1) * (1.0 - t * t / (2.0 * (2 * n_ + 3)));
    case SmallArgKind::J:
      return std::pow(t, n) / double_factorial(2 * n + 1) *
             (n_ + 1.0 - (n_ + 3.0) * t * t / (2.0 * (2 * n_ + 3)));
    case SmallArgKind::h:
      return -1i * double_factorial(2 * n - 1) / std::pow(t, n + 1) *
             (1.0 + t * t / (2.0 * (2 * n_ - 1)));
    case SmallArgKind::H:
      return -1i * double_factorial(2 * n - 1) / std::pow(t, n + 1) *
             (-n_ - (n_ - 2.0) * t * t / (2.0 * (2 * n_ - 1)));
  }
  return 0.0;
}

namespace {

std::mutex zero_mutex;
std::map<std::pair<int, int>, double> zero_memo;

double jn_real(int n, double x) { return sph_bessel_j(n, cplx(x, 0.0)).real(); }

double compute_zero(int n, int s) {
  if (n == 0) return s * pi;
  // k_{n-1,s} < k_{n,s} < k_{n-1,s+1}
  double a = bessel_zero(n - 1, s), b = bessel_zero(n - 1, s + 1);
  double fa = jn_real(n, a);
  for (int it = 0; it < 200 && b - a > 4e-16 * b; ++it) {
    const double c = 0.5 * (a + b);
    const double fc = jn_real(n, c);
    if (fc == 0.0) return c;
    if ((fc < 0.0) == (fa < 0.0)) {
      a = c;
      fa = fc;
    } else {
      b = c;
    }
  }
  double x = 0.5 * (a + b);
  const double dx = jn_real(n, x) / sph_bessel_j_prime(n, x).real();
  if (std::isfinite(dx) && std::abs(dx) < (b - a) + 1e-13) x -= dx;
  return x;
}

}  // namespace

double bessel_zero(int n, int s) {
  check_order(n);
  if (s < 1) throw IndexError("zero index s must be >= 1");
  {
    std::lock_guard<std::mutex> lock(zero_mutex);
    auto it = zero_memo.find({n, s});
    if (it != zero_memo.end()) return it->second;
  }
  const double k = compute_zero(n, s);
  std::lock_guard<std::mutex> lock(zero_mutex);
  zero_memo.emplace(std::make_pair(n, s), k);
  return k;
}

namespace {

// Orthonormal associated Legendre P_n^m(cos theta) for m >= 0, CS phase,
// recurring upward in the degree from the supplied diagonal value.
double legendre_from_diagonal(int n, int m, double x, double diag) {
  if (n < m) return 0.0;
  double p0 = diag;
  if (n == m) return p0;
  double p1 = std::sqrt(2.0 * m + 3.0) * x * p0;
  for (int l = m + 2; l <= n; ++l) {
    const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
    const double b = std::sqrt((double(l - 1) * (l - 1) - double(m) * m) /
                               (4.0 * (l - 1) * (l - 1) - 1.0));
    const double p2 = a * (x * p1 - b * p0);
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double diagonal(int m, double s) {
  double p = 1.0 / std::sqrt(4.0 * pi);
  for (int k = 1; k <= m; ++k) p *= -std::sqrt((2.0 * k + 1.0) / (2.0 * k)) * s;
  return p;
}

double legendre(int n, int m, double x, double s) {
  if (m < 0) return (m % 2 == 0 ? 1.0 : -1.0) * legendre(n, -m, x, s);
  if (m > n) return 0.0;
  return legendre_from_diagonal(n, m, x, diagonal(m, s));
}

// P_n^m / sin(theta) for m >= 1, finite at the poles.
double legendre_over_sin(int n, int m, double x, double s) {
  const double d = -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * diagonal(m - 1, s);
  return legendre_from_diagonal(n, m, x, d);
}

void check_nm(int n, int m) {
  if (n < 0) throw IndexError("harmonic degree must be >= 0");
  if (std::abs(m) > n)
    throw IndexError("|m| > n in spherical harmonic (" + std::to_string(n) + "," +
                     std::to_string(m) + ")");
}

}  // namespace

cplx sph_harmonic(int n, int m, const UnitDirection& xhat) {
  check_nm(n, m);
  const double th = xhat.theta(), ph = xhat.phi();
  const double p = legendre(n, m, std::cos(th), std::sin(th));
  return p * std::exp(1i * double(m) * ph);
}

VectorHarmonics vsh_UV(int n, int m, const UnitDirection& xhat) {
  if (n < 1) throw IndexError("vector harmonics need n >= 1");
  check_nm(n, m);
  const int am = std::abs(m);
  const double th = xhat.theta(), ph = xhat.phi();
  const double x = std::cos(th), s = std::sin(th);
  const double dtheta = 0.5 * std::sqrt(double(n + am + 1) * (n - am)) * legendre(n, am + 1, x, s) -
                        0.5 * std::sqrt(double(n + am) * (n - am + 1)) * legendre(n, am - 1, x, s);
  const double over_sin = am == 0 ? 0.0 : legendre_over_sin(n, am, x, s);
  const cplx e = std::exp(1i * double(am) * ph);
  const Vec3 that(x * std::cos(ph), x * std::sin(ph), -s);
  const Vec3 phat(-std::sin(ph), std::cos(ph), 0.0);
  CVec3 grad = (dtheta * e) * that.cast<cplx>() + (1i * double(am) * over_sin * e) * phat.cast<cplx>();
  if (m < 0) grad = ((am % 2 == 0) ? 1.0 : -1.0) * grad.conjugate();
  VectorHarmonics out;
  out.U = grad / std::sqrt(double(n) * (n + 1));
  out.V = cross(xhat.cartesian().cast<cplx>(), out.U);
  return out;
}

CVec3 dipole_gradient(int m) {
  if (std::abs(m) > 1) throw IndexError("dipole gradient needs |m| <= 1");
  if (m == 0) return CVec3(0.0, 0.0, 0.5 * std::sqrt(3.0 / pi));
  const double c = -double(m) * 0.5 * std::sqrt(3.0 / (2.0 * pi));
  return CVec3(c, c * 1i * double(m), 0.0);
}

}  // namespace dieres
