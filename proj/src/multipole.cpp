// SPDX-License-Identifier: Apache-2.0
#include "dieres/multipole.hpp"

#include <cmath>
#include <numbers>

namespace dieres {

namespace {

std::size_t power3(int r) {
  std::size_t n = 1;
  for (int i = 0; i < r; ++i) n *= 3;
  return n;
}

const MomentTensor* find(const std::vector<MomentTensor>& ms, MomentKind kind, int l) {
  for (const auto& m : ms)
    if (m.kind() == kind && m.order() == l) return &m;
  return nullptr;
}

// sum_w f(y) (x) y^(extra) into t, the first index taken by f
template <class F>
void accumulate(MomentTensor& t, int extra, double scale, const F& f, const BallQuadrature& q) {
  const std::size_t tail = power3(extra);
  std::vector<double> powers(tail);
  for (std::size_t p = 0; p < q.size(); ++p) {
    const Vec3& y = q.point(p);
    const CVec3 v = f(y) * (q.weight(p) * scale);
    for (std::size_t k = 0; k < tail; ++k) {
      double prod = 1.0;
      std::size_t rest = k;
      for (int i = 0; i < extra; ++i) {
        prod *= y[rest % 3];
        rest /= 3;
      }
      powers[k] = prod;
    }
    for (int c = 0; c < 3; ++c)
      for (std::size_t k = 0; k < tail; ++k) t[c * tail + k] += v[c] * powers[k];
  }
}

void degree_warning(MomentTensor& t, int degree, int extra, const BallQuadrature& q) {
  if (degree >= 0 && degree + extra > q.exact_degree())
    t.warning = "integrand degree " + std::to_string(degree + extra) + " exceeds quadrature exactness " +
                std::to_string(q.exact_degree());
}

}  // namespace

MomentTensor::MomentTensor(MomentKind kind, int order_l) : kind_(kind), order_(order_l) {
  if (kind == MomentKind::magnetic && (order_l < 0 || order_l > 5)) throw IndexError("magnetic order outside 0..5");
  if (kind == MomentKind::electric && (order_l < 0 || order_l > 4)) throw IndexError("electric order outside 0..4");
  rank_ = kind == MomentKind::magnetic ? std::max(order_l, 1) : order_l + 1;
  entries_.assign(power3(rank_), 0.0);
}

cplx& MomentTensor::at(const std::vector<int>& index) {
  if (int(index.size()) != rank_) throw IndexError("tensor index has the wrong rank");
  std::size_t flat = 0;
  for (int i : index) {
    if (i < 0 || i > 2) throw IndexError("tensor index outside 0..2");
    flat = 3 * flat + std::size_t(i);
  }
  return entries_[flat];
}

cplx MomentTensor::at(const std::vector<int>& index) const { return const_cast<MomentTensor*>(this)->at(index); }

CVec3 MomentTensor::contract(const Vec3& x) const {
  std::vector<cplx> cur = entries_;
  for (int r = rank_; r > 1; --r) {
    std::vector<cplx> next(cur.size() / 3);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = cur[3 * i] * x[0] + cur[3 * i + 1] * x[1] + cur[3 * i + 2] * x[2];
    cur = std::move(next);
  }
  return CVec3(cur[0], cur[1], cur[2]);
}

double MomentTensor::max_abs() const {
  double m = 0.0;
  for (cplx v : entries_) m = std::max(m, std::abs(v));
  return m;
}

void DecomposedField::check_boundary(double tol, int n_theta, int n_phi) const {
  if (!curl_potential) throw DomainError("decomposed field has no curl potential");
  const SphereQuadrature s(n_theta, n_phi);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Vec3& x = s.point(i).cartesian();
    const double t = cross(x.cast<cplx>(), curl_potential(x)).norm();
    if (t > tol) throw DomainError("curl potential has a tangential trace of " + std::to_string(t));
  }
}

MomentTensor magnetic_moment(int l, const DecomposedField& f, const BallQuadrature& q) {
  if (l < 1 || l > 4) throw IndexError("magnetic moments are implemented for 1 <= l <= 4");
  MomentTensor t(MomentKind::magnetic, l);
  if (f.curl_potential) accumulate(t, l - 1, double(l), f.curl_potential, q);
  degree_warning(t, f.curl_degree, l - 1, q);
  return t;
}

MomentTensor electric_moment(int l, const DecomposedField& f, const BallQuadrature& q) {
  if (l < 0 || l > 2) throw IndexError("electric moments are implemented for 0 <= l <= 2");
  MomentTensor t(MomentKind::electric, l);
  if (f.grad_potential_gradient) accumulate(t, l, 1.0, f.grad_potential_gradient, q);
  degree_warning(t, f.grad_degree, l, q);
  return t;
}

CVec3 amplitude_from_moments(const std::vector<MomentTensor>& moments, double delta, cplx tau, cplx omega,
                             const UnitDirection& xhat, Truncation truncation, int L) {
  using namespace std::complex_literals;
  int top = 1;
  if (truncation == Truncation::order4) top = 2;
  if (truncation == Truncation::orderL) {
    if (L < 1) throw IndexError("orderL truncation needs L >= 1");
    top = L;
  }
  const Vec3& x = xhat.cartesian();
  const CVec3 xc = x.cast<cplx>();
  CVec3 sum = CVec3::Zero();
  cplx factor = 1.0;  // (-i delta omega)^l / l!
  for (int l = 0; l <= top; ++l) {
    if (l >= 1) {
      const MomentTensor* M = find(moments, MomentKind::magnetic, l);
      if (!M) throw MissingMoment("magnetic moment of order " + std::to_string(l) + " is required");
      sum += factor * cross(M->contract(x), xc);
    }
    if (l < top) {
      const MomentTensor* Q = find(moments, MomentKind::electric, l);
      if (!Q) throw MissingMoment("electric moment of order " + std::to_string(l) + " is required");
      sum += factor * Q->contract(x);
    }
    factor *= -1i * delta * omega / double(l + 1);
  }
  const CVec3 tangential = sum - xc * bdot(xc, sum);
  return tau * omega * omega * std::pow(delta, 3) / (4.0 * std::numbers::pi) * tangential;
}

}  // namespace dieres
