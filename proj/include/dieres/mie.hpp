// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "dieres/fields.hpp"

namespace dieres {

struct ScatterConfig {
  double delta = 0.0;
  cplx tau = 0.0;
  cplx omega = 0.0;
  // Unset: max(8, ceil(|delta omega_tau|) + 8). Zero gives an empty table.
  std::optional<int> n_max;

  // Enforces delta > 0, Re tau > 0, Im tau >= 0, omega != 0.
  void validate() const;
  cplx omega_tau() const;
  int truncation() const;
};

int default_n_max(const ScatterConfig& cfg);

struct Denominator {
  cplx value;
  double scale;  // |first product| + |second product|
};

// Mie denominators with a = delta omega and b = delta omega_tau:
//   TE: h_n(a) J_n(b) - j_n(b) H_n(a)
//   TM: h_n(a) J_n(b) / (1 + tau) - j_n(b) H_n(a)
Denominator mie_denominator(Family family, int n, double delta, cplx tau, cplx omega);

class MieTable {
 public:
  MieTable(const ScatterConfig& cfg, const IncidentWave& w, int n_max);

  const ScatterConfig& config() const { return cfg_; }
  const IncidentWave& incident() const { return wave_; }
  int n_max() const { return n_max_; }

  cplx& gamma(int n, int m) { return gamma_[slot(n, m)]; }
  cplx& eta(int n, int m) { return eta_[slot(n, m)]; }
  cplx gamma(int n, int m) const { return gamma_[slot(n, m)]; }
  cplx eta(int n, int m) const { return eta_[slot(n, m)]; }

  // m-independent radial factors of gamma_{n,m} and eta_{n,m}
  cplx& radial_te(int n) { return rte_[order(n)]; }
  cplx& radial_tm(int n) { return rtm_[order(n)]; }
  cplx radial_te(int n) const { return rte_[order(n)]; }
  cplx radial_tm(int n) const { return rtm_[order(n)]; }

  void scale(cplx s);

  static std::size_t index(int n, int m);

 private:
  std::size_t slot(int n, int m) const {
    order(n);
    return index(n, m);
  }
  std::size_t order(int n) const {
    if (n < 1 || n > n_max_) throw IndexError("order outside the Mie table");
    return std::size_t(n - 1);
  }

  ScatterConfig cfg_;
  IncidentWave wave_;
  int n_max_;
  std::vector<cplx> gamma_, eta_, rte_, rtm_;
};

// Throws ResonanceError when |D| < 1e-14 scale for some n <= n_max.
MieTable mie_coefficients(const ScatterConfig& cfg, const IncidentWave& w);

CVec3 scattered_field(const MieTable& t, const Vec3& x);

CVec3 far_field(const MieTable& t, const UnitDirection& xhat);

struct CrossSectionReport {
  double Qs = 0.0;
  double Qext = 0.0;
  double Qabs = 0.0;
  int n_max_used = 0;
  bool converged = true;
};

// Requires real omega.
CrossSectionReport cross_sections(const MieTable& t);

struct CoefficientAsymptotics {
  cplx predicted_TE;
  cplx predicted_TM;
  bool te_is_envelope;  // n >= 2 only gives the order of magnitude
};

CoefficientAsymptotics coefficient_asymptotics(int n, const ScatterConfig& cfg);

}  // namespace dieres
