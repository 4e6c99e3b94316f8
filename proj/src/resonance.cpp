// SPDX-License-Identifier: Apache-2.0
#include "dieres/resonance.hpp"

#include <cmath>
#include <numbers>

namespace dieres {

void ContrastModel::validate() const {
  if (!(c_tau.real() > 0.0) || c_tau.imag() < 0.0)
    throw DomainError("contrast model needs Re c_tau > 0 and Im c_tau >= 0");
}

cplx ContrastModel::evaluate(double delta) const {
  if (!(delta > 0.0)) throw DomainError("contrast model is evaluated at delta > 0");
  cplx tau = c_tau / (delta * delta);
  double p = 1.0 / delta;
  for (double c : laurent) {
    tau += c * p;
    p *= delta;
  }
  return tau;
}

MullerResult muller_root(const std::function<cplx(cplx)>& f, cplx z0, cplx z1, cplx z2, double tol, int max_iter) {
  if (z0 == z1 || z1 == z2 || z0 == z2) throw DomainError("Muller needs three distinct starting points");
  cplx f0 = f(z0), f1 = f(z1), f2 = f(z2);
  MullerResult out;
  cplx best = z2;
  double best_res = std::abs(f2);
  for (int it = 1; it <= max_iter; ++it) {
    const cplx h1 = z1 - z0, h2 = z2 - z1;
    const cplx d1 = (f1 - f0) / h1, d2 = (f2 - f1) / h2;
    const cplx a = (d2 - d1) / (h2 + h1);
    const cplx b = a * h2 + d2;
    const cplx disc = std::sqrt(b * b - 4.0 * a * f2);
    const cplx den = std::abs(b + disc) >= std::abs(b - disc) ? b + disc : b - disc;
    cplx dz;
    if (den != 0.0)
      dz = -2.0 * f2 / den;
    else if (d2 != 0.0)
      dz = -f2 / d2;
    else
      throw NoConvergence(best, "Muller iteration stalled on a flat function");
    const cplx z3 = z2 + dz;
    const cplx f3 = f(z3);
    out.history.push_back(z3);
    if (!std::isfinite(std::abs(f3))) throw NoConvergence(best, "Muller iterate left the domain of f");
    if (std::abs(f3) < best_res) {
      best = z3;
      best_res = std::abs(f3);
    }
    z0 = z1;
    f0 = f1;
    z1 = z2;
    f1 = f2;
    z2 = z3;
    f2 = f3;
    if (std::abs(f3) <= tol || std::abs(dz) <= tol * std::abs(z3)) {
      out.root = best;
      out.residual = best_res;
      out.iterations = it;
      return out;
    }
  }
  throw NoConvergence(best, "Muller iteration did not converge in " + std::to_string(max_iter) + " steps");
}

cplx resonance_function(Family family, int n, double delta, cplx tau, cplx omega) {
  return mie_denominator(family, n, delta, tau, omega).value;
}

cplx quasi_static_prediction(Family family, int n, int s, const ContrastModel& model, double delta,
                             Prediction mode) {
  if (n < 1) throw IndexError("resonance order n must be >= 1");
  if (s < 1) throw IndexError("zero index s must be >= 1");
  const double k = bessel_zero(family == Family::TE ? n - 1 : n, s);
  if (mode == Prediction::finite_tau) return k / (delta * std::sqrt(model.evaluate(delta)));
  return k / std::sqrt(model.c_tau);
}

cplx first_order_correction(cplx omega_i, const ContrastModel& model, double delta) {
  return omega_i - delta * omega_i * model.c_minus1() / (2.0 * model.c_tau);
}

namespace {

MullerResult polish(Family family, int n, double delta, cplx tau, cplx seed, double tol) {
  auto f = [&](cplx w) { return resonance_function(family, n, delta, tau, w); };
  return muller_root(f, seed * (1.0 - 1e-3), seed * (1.0 + 1e-3), seed, tol, 50);
}

}  // namespace

ResonanceRoot find_resonance(Family family, int n, int s, double delta, const ContrastModel& model, double tol,
                             std::optional<cplx> seed) {
  model.validate();
  if (!(delta > 0.0)) throw DomainError("find_resonance needs delta > 0");
  ResonanceRoot r;
  r.family = family;
  r.order_n = n;
  r.zero_index_s = s;
  r.seed = seed ? *seed : first_order_correction(quasi_static_prediction(family, n, s, model, 0.0), model, delta);
  if (!(std::abs(delta * r.seed) < std::numbers::pi))
    throw RegimeError("seed " + std::to_string(std::abs(r.seed)) + " is outside the quasi-static regime for delta " +
                      std::to_string(delta));
  const cplx tau = model.evaluate(delta);
  MullerResult m = polish(family, n, delta, tau, r.seed, tol);
  int iterations = m.iterations;
  if (m.root.real() < 0.0) {
    m = polish(family, n, delta, tau, -std::conj(m.root), tol);
    iterations += m.iterations;
  }
  r.omega = m.root;
  r.residual = m.residual;
  r.iterations = iterations;
  return r;
}

std::vector<cplx> cluster_roots(const std::vector<cplx>& roots, double tol) {
  std::vector<cplx> out;
  for (cplx z : roots) {
    bool seen = false;
    for (cplx c : out) seen = seen || std::abs(z - c) <= tol * std::max(1.0, std::abs(c));
    if (!seen) out.push_back(z);
  }
  return out;
}

std::vector<ResonanceRoot> find_resonance_cluster(Family family, int n, int s, double delta,
                                                  const ContrastModel& model, int starts, double tol) {
  if (starts < 1) throw DomainError("need at least one start");
  const cplx base = first_order_correction(quasi_static_prediction(family, n, s, model, 0.0), model, delta);
  std::vector<ResonanceRoot> found;
  std::vector<cplx> omegas;
  for (int k = 0; k < starts; ++k) {
    const cplx seed = base * (1.0 + 1e-2 * k * std::polar(1.0, std::numbers::pi * k / starts));
    const ResonanceRoot r = find_resonance(family, n, s, delta, model, tol, seed);
    found.push_back(r);
    omegas.push_back(r.omega);
  }
  std::vector<ResonanceRoot> out;
  for (cplx w : cluster_roots(omegas))
    for (const auto& r : found)
      if (r.omega == w) {
        out.push_back(r);
        break;
      }
  return out;
}

std::vector<SweepPoint> sweep_resonance(Family family, int n, int s, const std::vector<double>& deltas,
                                        const ContrastModel& model, double tol) {
  for (std::size_t i = 1; i < deltas.size(); ++i)
    if (!(deltas[i] > deltas[i - 1])) throw DomainError("sweep deltas must be strictly increasing");
  std::vector<SweepPoint> out;
  std::optional<cplx> previous;
  for (double d : deltas) {
    SweepPoint p;
    p.delta = d;
    p.prediction = first_order_correction(quasi_static_prediction(family, n, s, model, 0.0), model, d);
    try {
      p.root = find_resonance(family, n, s, d, model, tol, previous);
      previous = p.root->omega;
    } catch (const std::exception& e) {
      p.error = e.what();
    }
    out.push_back(std::move(p));
  }
  return out;
}

}  // namespace dieres
