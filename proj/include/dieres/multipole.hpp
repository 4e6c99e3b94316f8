// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dieres/errors.hpp"
#include "dieres/quadrature.hpp"

namespace dieres {

enum class MomentKind { magnetic, electric };

// Dense complex tensor of rank <= 5, row-major in its multi-index. Magnetic
// order l has rank l, electric order l has rank l + 1; the first index is
// the field component.
class MomentTensor {
 public:
  MomentTensor(MomentKind kind, int order_l);

  MomentKind kind() const { return kind_; }
  int order() const { return order_; }
  int rank() const { return rank_; }
  std::size_t size() const { return entries_.size(); }

  cplx& operator[](std::size_t flat) { return entries_[flat]; }
  cplx operator[](std::size_t flat) const { return entries_[flat]; }
  cplx& at(const std::vector<int>& index);
  cplx at(const std::vector<int>& index) const;
  const std::vector<cplx>& entries() const { return entries_; }

  // Contracts every index after the first with x, giving a 3-vector.
  CVec3 contract(const Vec3& x) const;
  double max_abs() const;

  // Set when the integrand's declared degree exceeds the quadrature's exactness.
  std::string warning;

 private:
  MomentKind kind_;
  int order_;
  int rank_;
  std::vector<cplx> entries_;
};

// psi = curl(phi) + grad(p), phi with vanishing tangential trace. The split is
// supplied by the caller.
struct DecomposedField {
  std::function<CVec3(const Vec3&)> curl_potential;
  std::function<CVec3(const Vec3&)> grad_potential_gradient;
  // Polynomial degree of each sampler when known, -1 otherwise.
  int curl_degree = -1;
  int grad_degree = -1;

  // Throws DomainError if |nu x phi| > tol somewhere on a boundary grid.
  void check_boundary(double tol = 1e-10, int n_theta = 12, int n_phi = 24) const;
};

// l int_B phi (x) y^(l-1), 1 <= l <= 4.
MomentTensor magnetic_moment(int l, const DecomposedField& f, const BallQuadrature& q);
// int_B grad p (x) y^l, 0 <= l <= 2.
MomentTensor electric_moment(int l, const DecomposedField& f, const BallQuadrature& q);

enum class Truncation { dipole_pair, order4, orderL };

// (tau omega^2 delta^3 / 4 pi)(I - xhat xhat) sum_l ((-i delta omega)^l / l!)
//   (M_l(., xhat^(l-1)) x xhat + Q_l(., xhat^l))
// dipole_pair uses Q_0 and M_1; order4 adds M_2 and Q_1; orderL uses M_1..M_L
// and Q_0..Q_(L-1). Missing tensors raise MissingMoment.
CVec3 amplitude_from_moments(const std::vector<MomentTensor>& moments, double delta, cplx tau, cplx omega,
                             const UnitDirection& xhat, Truncation truncation, int L = 0);

}  // namespace dieres
