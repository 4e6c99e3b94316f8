// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dieres/mie.hpp"

namespace dieres {

// tau(delta) = c_tau delta^-2 + sum_i laurent[i] delta^(i - 1), so laurent[0]
// is the coefficient of delta^-1.
struct ContrastModel {
  cplx c_tau = 1.0;
  std::vector<double> laurent;

  void validate() const;
  cplx evaluate(double delta) const;
  double c_minus1() const { return laurent.empty() ? 0.0 : laurent.front(); }
};

struct ResonanceRoot {
  cplx omega;
  Family family = Family::TE;
  int order_n = 1;
  int zero_index_s = 1;
  double residual = 0.0;
  int iterations = 0;
  cplx seed;
};

struct MullerResult {
  cplx root;
  double residual = 0.0;
  int iterations = 0;
  std::vector<cplx> history;  // every accepted iterate, starting points excluded
};

// Stops when |f(z)| <= tol or |dz| <= tol |z|. Falls back to a secant step
// when the parabola degenerates. Throws NoConvergence with the best iterate.
MullerResult muller_root(const std::function<cplx(cplx)>& f, cplx z0, cplx z1, cplx z2, double tol = 1e-12,
                         int max_iter = 50);

// The Mie denominator of the given family (same code path as mie_coefficients).
cplx resonance_function(Family family, int n, double delta, cplx tau, cplx omega);

enum class Prediction { limit, finite_tau };

// k / sqrt(c_tau), k = k_{n-1,s} (TE) or k_{n,s} (TM). The finite_tau mode
// returns k / (delta sqrt(tau(delta))) instead and needs delta > 0.
cplx quasi_static_prediction(Family family, int n, int s, const ContrastModel& model, double delta,
                             Prediction mode = Prediction::limit);

cplx first_order_correction(cplx omega_i, const ContrastModel& model, double delta);

// Seeded at the corrected quasi-static value unless `seed` is given. Throws
// RegimeError when |delta seed| >= pi. Roots landing in the second quadrant
// are reflected to -conj(omega) and re-polished.
ResonanceRoot find_resonance(Family family, int n, int s, double delta, const ContrastModel& model,
                             double tol = 1e-12, std::optional<cplx> seed = std::nullopt);

// Distinct values, merged when closer than tol (first occurrence kept).
std::vector<cplx> cluster_roots(const std::vector<cplx>& roots, double tol = 1e-8);

// Runs find_resonance from `starts` perturbed seeds and clusters the results.
std::vector<ResonanceRoot> find_resonance_cluster(Family family, int n, int s, double delta,
                                                  const ContrastModel& model, int starts, double tol = 1e-12);

struct SweepPoint {
  double delta = 0.0;
  std::optional<ResonanceRoot> root;
  cplx prediction;
  std::string error;  // set when this point failed
};

// Deltas must be strictly increasing. Each point is seeded by the previous
// root when there is one.
std::vector<SweepPoint> sweep_resonance(Family family, int n, int s, const std::vector<double>& deltas,
                                        const ContrastModel& model, double tol = 1e-12);

}  // namespace dieres
