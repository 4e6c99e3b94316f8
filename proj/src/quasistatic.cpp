// SPDX-License-Identifier: Apache-2.0
#include "dieres/quasistatic.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <queue>
#include <tuple>

namespace dieres {

using namespace std::complex_literals;
using std::numbers::pi;

std::vector<SphereEigenvalue> sphere_spectrum(int count) {
  if (count < 1) throw DomainError("spectrum count must be >= 1");
  // (k, n, s): the smallest k is the largest eigenvalue
  using Entry = std::tuple<double, int, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  heap.emplace(bessel_zero(0, 1), 0, 1);
  int next_family = 1;
  std::vector<SphereEigenvalue> out;
  while (int(out.size()) < count) {
    auto [k, n, s] = heap.top();
    heap.pop();
    if (s == 1 && n + 1 == next_family && next_family <= 63) {
      heap.emplace(bessel_zero(next_family, 1), next_family, 1);
      ++next_family;
    }
    if (s < 200) heap.emplace(bessel_zero(n, s + 1), n, s + 1);
    SphereEigenvalue e;
    e.k = k;
    e.lambda = 1.0 / (k * k);
    e.family_n = n;
    e.zero_index_s = s;
    for (int m = -(n + 1); m <= n + 1; ++m) e.labels.push_back({Family::TE, n + 1, m, k});
    if (n >= 1)
      for (int m = -n; m <= n; ++m) e.labels.push_back({Family::TM, n, m, k});
    e.multiplicity = int(e.labels.size());
    out.push_back(std::move(e));
  }
  return out;
}

double eigenmode_norm(const EigenModeLabel& label) {
  const int n = label.n;
  const double k = label.k;
  if (n < 1 || std::abs(label.m) > n) throw IndexError("eigenmode label needs n >= 1 and |m| <= n");
  if (!(k > 0.0)) throw DomainError("eigenmode wavenumber must be positive");
  const double nn = double(n) * (n + 1);
  if (label.kind == Family::TE) {
    const double jn = sph_bessel_j(n, k).real();
    const double lommel = 0.5 * (jn * jn - sph_bessel_j(n + 1, k).real() * sph_bessel_j(n - 1, k).real());
    return std::sqrt(nn * lommel);
  }
  const GaussLegendre gl(64);
  double acc = 0.0;
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double r = 0.5 * (gl.nodes[i] + 1.0);
    const double J = riccati_J(n, k * r).real(), j = sph_bessel_j(n, k * r).real();
    acc += 0.5 * gl.weights[i] * (J * J + nn * j * j);
  }
  return std::sqrt(nn / (k * k) * acc);
}

CVec3 eigenmode(const EigenModeLabel& label, const Vec3& x, bool normalized) {
  if (x.norm() > 1.0 + 1e-12) throw DomainError("eigenmodes live in the unit ball");
  const CVec3 E = multipole_field(Variant::entire, label.kind, label.n, label.m, label.k, x);
  return normalized ? CVec3(E / eigenmode_norm(label)) : E;
}

CVec3 mode_potential(int j, const Vec3& x) {
  const double r = x.norm();
  if (r == 0.0) return CVec3::Zero();
  return pi * sph_bessel_j(1, pi * r) * sph_harmonic(1, j, UnitDirection::along(x)) * x.cast<cplx>();
}

CVec3 mode_potential_integral(int j, Evaluation how) {
  if (std::abs(j) > 1) throw IndexError("ground-mode index must lie in {-1, 0, 1}");
  if (how == Evaluation::analytic) {
    // pi int_0^1 r^3 j_1(pi r) dr = 3/pi^2, int_S xhat Y_1^j = (4 pi/3) grad(r Y_1^j)
    return (3.0 / (pi * pi)) * (4.0 * pi / 3.0) * dipole_gradient(j);
  }
  const BallQuadrature q(32, 16, 32);
  return q.integrate([&](const Vec3& x) { return mode_potential(j, x); });
}

Eigen::Matrix2cd matching_system(Family family, int n, double k) {
  Eigen::Matrix2cd A;
  if (family == Family::TE)
    A << sph_bessel_j(n, k), -1.0, riccati_J(n, k), double(n);
  else
    A << sph_bessel_j(n, k), 0.0, riccati_J(n, k) / (1i * k), -(2.0 * n + 1.0);
  return A;
}

namespace {

void check_pole(cplx omega, cplx omega0) {
  if (std::abs(omega - omega0) <= 1e-12 * std::max(1.0, std::abs(omega0)))
    throw PoleError("omega coincides with the quasi-static resonance");
}

cplx ground_resonance(const ContrastModel& model) { return bessel_zero(0, 1) / std::sqrt(model.c_tau); }

void check_wave(const IncidentWave& w, double omega) {
  if (w.omega() != omega) throw DomainError("incident wave frequency differs from omega");
}

}  // namespace

cplx scatter_fn_explicit(cplx omega, double delta, cplx tau) {
  const cplx t = delta * omega * std::sqrt(1.0 + tau);
  const cplx J = riccati_J(1, t), j = sph_bessel_j(1, t);
  if (std::abs(J + j) <= 1e-12 * (std::abs(J) + std::abs(j))) throw PoleError("scattering function pole");
  return (8.0 * pi * pi / 3.0) * (2.0 * j - J) / (J + j);
}

cplx scatter_fn_general(cplx omega, cplx omega0, cplx c_tau) {
  check_pole(omega, omega0);
  return -(8.0 / (pi * pi)) * omega * omega * omega0 * c_tau / (omega - omega0);
}

cplx blowup_coefficient(cplx omega, double delta, cplx omega0, cplx c_tau, double c_m1, double lambda0) {
  (void)c_tau;
  check_pole(omega, omega0);
  const cplx e = omega - omega0;
  return -omega0 / (2.0 * e) + delta * omega0 * omega0 * c_m1 * omega * omega * lambda0 / (4.0 * e * e);
}

double SHCoefficients::degree_energy(int l) const {
  double s = 0.0;
  for (int m = -l; m <= l; ++m) s += std::norm(at(l, m));
  return s;
}

SHCoefficients sh_project(const std::function<cplx(const UnitDirection&)>& f, int L, const SphereQuadrature& q) {
  SHCoefficients out(L);
  for (std::size_t i = 0; i < q.size(); ++i) {
    const cplx v = f(q.point(i)) * q.weight(i);
    for (int l = 0; l <= L; ++l)
      for (int m = -l; m <= l; ++m) out.at(l, m) += v * std::conj(sph_harmonic(l, m, q.point(i)));
  }
  return out;
}

double np_eigenvalue(int l) { return -1.0 / (2.0 * (2.0 * l + 1.0)); }

CVec3 np_inverse_first_moment(const SHCoefficients& mu) {
  const SphereQuadrature q(mu.L + 2, 2 * mu.L + 4);
  CVec3 out = CVec3::Zero();
  // l = 0 spans the kernel of 1/2 + K* and is dropped
  for (int l = 1; l <= mu.L; ++l)
    for (int m = -l; m <= l; ++m) {
      const CVec3 T = q.integrate([&](const UnitDirection& x) -> CVec3 {
        return x.cartesian().cast<cplx>() * sph_harmonic(l, m, x);
      });
      out += mu.at(l, m) / (0.5 + np_eigenvalue(l)) * T;
    }
  return out;
}

namespace {

// G_lm(y) = int_S xhat conj(Y_lm(xhat)) / (4 pi |xhat - y|), expanded in the
// interior multipole series; only degrees l +- 1 survive.
std::vector<SHCoefficients> normal_traces(const std::vector<std::function<CVec3(const Vec3&)>>& fields, int L,
                                          const BallQuadrature& bq) {
  const int Lp = L + 1;
  const SphereQuadrature sq(L + 4, 2 * L + 8);
  // c[(l,m)][(L',M)] 3-vectors
  std::vector<std::vector<CVec3>> c((L + 1) * (L + 1), std::vector<CVec3>((Lp + 1) * (Lp + 1), CVec3::Zero()));
  for (std::size_t i = 0; i < sq.size(); ++i) {
    const UnitDirection& x = sq.point(i);
    const CVec3 xv = x.cartesian().cast<cplx>() * sq.weight(i);
    std::vector<cplx> Y((Lp + 1) * (Lp + 1));
    for (int l = 0; l <= Lp; ++l)
      for (int m = -l; m <= l; ++m) Y[l * l + l + m] = sph_harmonic(l, m, x);
    for (int l = 0; l <= L; ++l)
      for (int m = -l; m <= l; ++m)
        for (int lp = l == 0 ? 1 : l - 1; lp <= l + 1; lp += 2)
          for (int mp = -lp; mp <= lp; ++mp)
            c[l * l + l + m][lp * lp + lp + mp] += xv * std::conj(Y[l * l + l + m]) * Y[lp * lp + lp + mp];
  }
  std::vector<SHCoefficients> out(fields.size(), SHCoefficients(L));
  std::vector<cplx> Y((Lp + 1) * (Lp + 1));
  for (std::size_t q = 0; q < bq.size(); ++q) {
    const Vec3& y = bq.point(q);
    const double r = y.norm();
    const UnitDirection yh = UnitDirection::along(y);
    for (int l = 0; l <= Lp; ++l)
      for (int m = -l; m <= l; ++m) Y[l * l + l + m] = std::conj(sph_harmonic(l, m, yh)) * (std::pow(r, l) / (2.0 * l + 1.0));
    std::vector<CVec3> F;
    for (const auto& f : fields) F.push_back(f(y) * bq.weight(q));
    for (int l = 0; l <= L; ++l)
      for (int m = -l; m <= l; ++m) {
        CVec3 G = CVec3::Zero();
        const auto& row = c[l * l + l + m];
        for (int lp = l == 0 ? 1 : l - 1; lp <= l + 1; lp += 2)
          for (int mp = -lp; mp <= lp; ++mp) G += Y[lp * lp + lp + mp] * row[lp * lp + lp + mp];
        for (std::size_t k = 0; k < fields.size(); ++k) out[k].at(l, m) += bdot(F[k], G);
      }
  }
  return out;
}

bool resolved(const SHCoefficients& s, double floor) {
  double total = 0.0;
  for (int l = 0; l <= s.L; ++l) total += s.degree_energy(l);
  return total <= floor * floor || s.degree_energy(s.L) <= 1e-10 * total;
}

struct GroundModeGeometry {
  std::array<SHCoefficients, 3> traces;  // nu . N[E_j]
  std::array<CMat3, 3> phi_y;            // int phi_j (x) y
};

const GroundModeGeometry& ground_geometry(const MomentOptions& opt) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, int>, GroundModeGeometry> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_tuple(opt.sh_degree, opt.n_radial, opt.n_theta, opt.n_phi);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  const BallQuadrature bq(opt.n_radial, opt.n_theta, opt.n_phi);
  std::vector<std::function<CVec3(const Vec3&)>> modes;
  for (int j = -1; j <= 1; ++j)
    modes.push_back([j](const Vec3& x) { return eigenmode({Family::TE, 1, j, pi}, x, true); });
  const auto traces = normal_traces(modes, opt.sh_degree, bq);
  GroundModeGeometry g;
  for (int j = 0; j < 3; ++j) {
    g.traces[j] = traces[j];
    g.phi_y[j] = bq.integrate([&](const Vec3& x) -> CMat3 {
      return mode_potential(j - 1, x) * x.cast<cplx>().transpose();
    });
  }
  return cache.emplace(key, std::move(g)).first->second;
}

}  // namespace

SHCoefficients newtonian_normal_trace(const std::function<CVec3(const Vec3&)>& F, int L, const BallQuadrature& q) {
  return normal_traces({F}, L, q).front();
}

DipolePair dipole_approximation(const IncidentWave& w, double omega, double delta, const ContrastModel& model) {
  check_wave(w, omega);
  model.validate();
  const cplx w0 = ground_resonance(model);
  check_pole(omega, w0);
  const SphereQuadrature sq(8, 16);
  CMat3 P;
  for (int i = 0; i < 3; ++i) {
    const auto nu_i = sh_project([i](const UnitDirection& x) { return cplx(x.cartesian()[i]); }, 2, sq);
    P.col(i) = np_inverse_first_moment(nu_i);
  }
  DipolePair out;
  out.p = std::pow(delta, 3) * P * w.E0().cast<cplx>();
  const CVec3 dxe = w.d().cartesian().cross(w.E0()).cast<cplx>();
  CVec3 sum = CVec3::Zero();
  for (int j = -1; j <= 1; ++j) {
    const CVec3 a = mode_potential_integral(j);
    sum += a * a.dot(dxe);
  }
  const cplx pre = model.c_tau * omega * omega * std::pow(delta, 3) * (-w0 / (2.0 * (omega - w0)));
  out.m = pre * sum;
  return out;
}

CVec3 explicit_magnetic_dipole(const IncidentWave& w, cplx omega, double delta, cplx tau) {
  const CVec3 dxe = w.d().cartesian().cross(w.E0()).cast<cplx>();
  CVec3 sum = CVec3::Zero();
  for (int j = -1; j <= 1; ++j) {
    const CVec3 Y = dipole_gradient(j);
    sum += Y * Y.dot(dxe);
  }
  return std::pow(delta, 3) * scatter_fn_explicit(omega, delta, tau) * sum;
}

CVec3 dipole_far_field(const DipolePair& dp, cplx omega, const UnitDirection& xhat) {
  const CVec3 x = xhat.cartesian().cast<cplx>();
  return omega * omega / (4.0 * pi) * (cross(x, cross(dp.p, x)) + cross(dp.m, x));
}

ResonantMoments resonant_moments(const IncidentWave& w, double omega, double delta, const ContrastModel& model,
                                 const MomentOptions& opt) {
  check_wave(w, omega);
  model.validate();
  const cplx w0 = ground_resonance(model);
  check_pole(omega, w0);
  const GroundModeGeometry& geo = ground_geometry(opt);
  const BallQuadrature bq(opt.n_radial, opt.n_theta, opt.n_phi);
  const CVec3 E0 = w.E0().cast<cplx>();
  const Vec3 d = w.d().cartesian();
  auto Ei = [&](const Vec3& x) -> CVec3 { return E0 * std::exp(1i * (delta * omega * d.dot(x))); };

  ResonantMoments out;
  for (int j = 0; j < 3; ++j)
    out.projections[j] = bq.integrate([&](const Vec3& x) {
      return bdot(Ei(x), eigenmode({Family::TE, 1, j - 1, pi}, x, true).conjugate());
    });

  // (T_B|_W)^{-1} P_w E~i = grad u with u = sum u_lm r^l Y_lm
  const auto b = sh_project([&](const UnitDirection& x) { return bdot(x.cartesian().cast<cplx>(), Ei(x.cartesian())); },
                            opt.sh_degree, bq.sphere());
  SHCoefficients u(opt.sh_degree);
  for (int l = 1; l <= opt.sh_degree; ++l)
    for (int m = -l; m <= l; ++m) u.at(l, m) = -b.at(l, m) * (2.0 * l + 1.0) / double(l * l);

  const cplx tau = model.evaluate(delta);
  const cplx Cm = blowup_coefficient(omega, delta, w0, model.c_tau, model.c_minus1(), 1.0 / (pi * pi));
  const cplx coupling = omega * omega * w0 * model.c_tau / tau / (2.0 * (omega - w0));
  const cplx pre_phi = delta * delta * omega * omega * w0 / (2.0 * (omega - w0));

  out.M1hat = CVec3::Zero();
  out.M2hat = CMat3::Zero();
  SHCoefficients phi_trace(opt.sh_degree);
  for (int j = 0; j < 3; ++j) {
    const SHCoefficients& g = geo.traces[j];
    cplx pairing = 0.0;
    for (int l = 1; l <= opt.sh_degree; ++l)
      for (int m = -l; m <= l; ++m) pairing += g.at(l, m) * std::conj(u.at(l, m));
    out.C_hat[j] = Cm * out.projections[j] + coupling * pairing;
    out.M1hat += out.C_hat[j] * mode_potential_integral(j - 1);
    out.M2hat += (-w0 / (omega - w0)) * out.projections[j] * geo.phi_y[j];
    for (std::size_t i = 0; i < g.c.size(); ++i) phi_trace.c[i] += pre_phi * out.projections[j] * g.c[i];
    out.resolved = out.resolved && resolved(g, 1e-13);
  }
  out.resolved = out.resolved && resolved(b, 1e-13);
  out.Q0hat = -np_inverse_first_moment(phi_trace);
  return out;
}

AveragedCrossSections averaged_cross_sections(double omega, double delta, const ContrastModel& model) {
  model.validate();
  const cplx w0 = ground_resonance(model);
  check_pole(omega, w0);
  const double a2 = mode_potential_integral(0).squaredNorm();
  AveragedCrossSections out;
  out.Qs_m = std::norm(model.c_tau) * std::pow(delta, 6) * std::norm(w0) * std::pow(omega, 8) / std::norm(omega - w0) *
             (4.0 * pi / 27.0) * a2 * a2;
  out.Qext_m = model.c_tau * std::pow(delta, 3) * (-w0 * std::pow(omega, 3) / (omega - w0)) * (16.0 * pi * pi / 9.0) * a2;
  return out;
}

}  // namespace dieres
