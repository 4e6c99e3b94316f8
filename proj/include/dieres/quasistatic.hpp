// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>
#include <vector>

#include "dieres/quadrature.hpp"
#include "dieres/resonance.hpp"

namespace dieres {

struct EigenModeLabel {
  Family kind = Family::TE;
  int n = 1;
  int m = 0;
  double k = 0.0;
};

struct SphereEigenvalue {
  double k = 0.0;
  double lambda = 0.0;
  int family_n = 0;  // k is a zero of j_{family_n}
  int zero_index_s = 1;
  int multiplicity = 0;
  std::vector<EigenModeLabel> labels;  // TE (n+1, m, k) then TM (n, m, k)
};

// The `count` largest eigenvalues 1/k^2, descending.
std::vector<SphereEigenvalue> sphere_spectrum(int count);

// L2(B) norm of the labelled entire field.
double eigenmode_norm(const EigenModeLabel& label);

CVec3 eigenmode(const EigenModeLabel& label, const Vec3& x, bool normalized);

// Curl potential of the normalized ground mode E_j = pi E^TE_{1,j}(pi, .):
// phi_j = pi x j_1(pi |x|) Y_1^j, which has zero tangential trace.
CVec3 mode_potential(int j, const Vec3& x);

enum class Evaluation { analytic, quadrature };

CVec3 mode_potential_integral(int j, Evaluation how = Evaluation::analytic);

// 2x2 coefficient matrices from matching the tangential traces at |x| = 1:
// TE [[j_n, -1], [J_n, n]], TM [[j_n, 0], [J_n/(ik), -(2n+1)]].
Eigen::Matrix2cd matching_system(Family family, int n, double k);

// (8 pi^2/3)(2 j_1(t) - J_1(t))/(J_1(t) + j_1(t)), t = delta omega_tau.
cplx scatter_fn_explicit(cplx omega, double delta, cplx tau);
cplx scatter_fn_general(cplx omega, cplx omega0, cplx c_tau);

cplx blowup_coefficient(cplx omega, double delta, cplx omega0, cplx c_tau, double c_m1, double lambda0);

// Spherical-harmonic coefficients c_{l,m}, l <= L, stored at l^2 + l + m.
struct SHCoefficients {
  int L = 0;
  std::vector<cplx> c;

  explicit SHCoefficients(int degree = 0) : L(degree), c(std::size_t((degree + 1) * (degree + 1)), 0.0) {}
  cplx& at(int l, int m) { return c.at(std::size_t(l * l + l + m)); }
  cplx at(int l, int m) const { return c.at(std::size_t(l * l + l + m)); }
  double degree_energy(int l) const;
};

SHCoefficients sh_project(const std::function<cplx(const UnitDirection&)>& f, int L, const SphereQuadrature& q);

// Neumann-Poincare adjoint on the unit sphere for the kernel 1/(4 pi |x - y|):
// K*[Y_l] = -Y_l / (2 (2l + 1)), so 1/2 + K* acts as l / (2l + 1).
double np_eigenvalue(int l);

// int_{|y|=1} y (1/2 + K*)^{-1}[mu](y) dsigma. The l = 0 part of mu must vanish.
CVec3 np_inverse_first_moment(const SHCoefficients& mu);

// SH coefficients of nu . N[F] on the unit sphere, N the Newtonian potential
// over the unit ball.
SHCoefficients newtonian_normal_trace(const std::function<CVec3(const Vec3&)>& F, int L, const BallQuadrature& q);

struct DipolePair {
  CVec3 p;
  CVec3 m;
};

// p = delta^3 int y (1/2 + K*)^{-1}[nu] E0 and the resonant magnetic dipole
// summed over the three ground modes. The regular remainder is omitted.
DipolePair dipole_approximation(const IncidentWave& w, double omega, double delta, const ContrastModel& model);

// The magnetic dipole read off the n = 1 Mie coefficient:
// delta^3 s~(omega) sum_j Y_j (conj(Y_j) . (d x E0)).
CVec3 explicit_magnetic_dipole(const IncidentWave& w, cplx omega, double delta, cplx tau);

// omega^2/(4 pi) (xhat x (p x xhat) + m x xhat)
CVec3 dipole_far_field(const DipolePair& dp, cplx omega, const UnitDirection& xhat);

struct MomentOptions {
  int sh_degree = 6;
  int n_radial = 24;
  int n_theta = 24;
  int n_phi = 48;
};

struct ResonantMoments {
  CVec3 Q0hat;
  CVec3 M1hat;
  CMat3 M2hat;
  std::array<cplx, 3> projections;  // (E~i, E_j), j = -1, 0, 1
  std::array<cplx, 3> C_hat;
  bool resolved = true;  // false when the top SH degree still carries energy
};

ResonantMoments resonant_moments(const IncidentWave& w, double omega, double delta, const ContrastModel& model,
                                 const MomentOptions& opt = {});

struct AveragedCrossSections {
  double Qs_m = 0.0;
  cplx Qext_m;
};

AveragedCrossSections averaged_cross_sections(double omega, double delta, const ContrastModel& model);

}  // namespace dieres
