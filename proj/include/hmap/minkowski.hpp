#pragma once

// Minkowski space R^{2,1} with signature (+,+,-), the hyperboloid model of the
// hyperbolic plane, SO+(2,1) and its Lie algebra. The time coordinate is the
// third one; J = diag(1, 1, -1).
//
// so(2,1) is identified with R^{2,1} by eta: a matrix A acts as x -> eta(A) x x
// (Minkowski cross product). Under this identification Ad_g becomes the plain
// action of g on vectors, and half the trace form becomes the Minkowski inner
// product.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

#include "hmap/errors.hpp"

namespace hmap {

template <typename Scalar>
using MinkVec = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Mat3T = Eigen::Matrix<Scalar, 3, 3>;

using Vec3 = MinkVec<double>;
using Mat3 = Mat3T<double>;

template <typename Scalar = double>
Mat3T<Scalar> minkowski_metric() {
  return MinkVec<Scalar>(Scalar(1), Scalar(1), Scalar(-1)).asDiagonal();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar mink_inner(const Eigen::MatrixBase<DerivedA>& x,
                                     const Eigen::MatrixBase<DerivedB>& y) {
  return x(0) * y(0) + x(1) * y(1) - x(2) * y(2);
}

template <typename DerivedA, typename DerivedB>
MinkVec<typename DerivedA::Scalar> mink_cross(const Eigen::MatrixBase<DerivedA>& x,
                                              const Eigen::MatrixBase<DerivedB>& y) {
  return MinkVec<typename DerivedA::Scalar>(x(1) * y(2) - y(1) * x(2),
                                            x(2) * y(0) - x(0) * y(2),
                                            -(x(0) * y(1) - x(1) * y(0)));
}

// sqrt(<x,x>) for space-like x; 0 for anything else.
template <typename Derived>
typename Derived::Scalar spacelike_norm(const Eigen::MatrixBase<Derived>& x) {
  using std::sqrt;
  const auto q = mink_inner(x, x);
  return q > 0 ? sqrt(q) : typename Derived::Scalar(0);
}

// sqrt(-<x,x>) for time-like x; 0 for anything else.
template <typename Derived>
typename Derived::Scalar timelike_norm(const Eigen::MatrixBase<Derived>& x) {
  using std::sqrt;
  const auto q = -mink_inner(x, x);
  return q > 0 ? sqrt(q) : typename Derived::Scalar(0);
}

template <typename Derived>
bool on_hyperboloid(const Eigen::MatrixBase<Derived>& x, double tol = 1e-12) {
  using std::abs;
  return x(2) > 0 && abs(mink_inner(x, x) + 1) <= tol * std::max(1.0, double(x(2) * x(2)));
}

// arccosh(-<p,q>) in a form that stays accurate for short distances:
// <p-q,p-q> = 4 sinh^2(l/2) on the hyperboloid.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar hyp_distance(const Eigen::MatrixBase<DerivedA>& p,
                                       const Eigen::MatrixBase<DerivedB>& q,
                                       double tol = 1e-12) {
  using Scalar = typename DerivedA::Scalar;
  using std::acosh;
  using std::asinh;
  using std::sqrt;
  const Scalar c = -mink_inner(p, q);
  if (!(c >= Scalar(1) - Scalar(tol) * std::max(Scalar(1), c)))
    throw DomainError("hyp_distance: points are not on the hyperboloid (-<p,q> < 1)");
  if (c < Scalar(2)) {
    const MinkVec<Scalar> d = p - q;
    const Scalar dd = std::max(mink_inner(d, d), Scalar(0));
    return Scalar(2) * asinh(sqrt(dd) / Scalar(2));
  }
  return acosh(c);
}

template <typename Derived>
MinkVec<typename Derived::Scalar> project_hyperboloid(const Eigen::MatrixBase<Derived>& x) {
  using std::sqrt;
  const auto q = -mink_inner(x, x);
  if (!(q > 0) || !(x(2) > 0))
    throw DomainError("project_hyperboloid: vector is not future time-like");
  return x / sqrt(q);
}

// Matrix of v x (.), i.e. eta^{-1}(v). It is anti-symmetric with respect to J.
template <typename Derived>
Mat3T<typename Derived::Scalar> lie_matrix(const Eigen::MatrixBase<Derived>& v) {
  using Scalar = typename Derived::Scalar;
  Mat3T<Scalar> a;
  a << Scalar(0), -v(2), v(1),
       v(2), Scalar(0), -v(0),
       v(1), -v(0), Scalar(0);
  return a;
}

template <typename Derived>
Mat3T<typename Derived::Scalar> eta_inv(const Eigen::MatrixBase<Derived>& v) {
  return lie_matrix(v);
}

// eta: recovers v from a J-antisymmetric matrix (averaging redundant entries).
template <typename Derived>
MinkVec<typename Derived::Scalar> eta(const Eigen::MatrixBase<Derived>& a) {
  using Scalar = typename Derived::Scalar;
  return MinkVec<Scalar>((-a(1, 2) - a(2, 1)) / Scalar(2),
                         (a(0, 2) + a(2, 0)) / Scalar(2),
                         (a(1, 0) - a(0, 1)) / Scalar(2));
}

// Half the trace form; equals <eta(a), eta(b)>.
template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar killing(const Eigen::MatrixBase<DerivedA>& a,
                                  const Eigen::MatrixBase<DerivedB>& b) {
  return (a * b).trace() / typename DerivedA::Scalar(2);
}

template <typename Derived>
Mat3T<typename Derived::Scalar> isometry_inverse(const Eigen::MatrixBase<Derived>& g) {
  using Scalar = typename Derived::Scalar;
  const Mat3T<Scalar> j = minkowski_metric<Scalar>();
  return j * g.transpose() * j;
}

template <typename Derived>
bool is_isometry(const Eigen::MatrixBase<Derived>& m, double tol = 1e-10) {
  using Scalar = typename Derived::Scalar;
  const Mat3T<Scalar> j = minkowski_metric<Scalar>();
  const Scalar scale = std::max(Scalar(1), m.cwiseAbs().maxCoeff());
  const Scalar defect = (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
  return defect <= Scalar(tol) * scale * scale && m(2, 2) > 0 && m.determinant() > 0;
}

template <typename DerivedG, typename DerivedV>
typename DerivedG::Scalar adjoint_identity_check(const Eigen::MatrixBase<DerivedG>& g,
                                                 const Eigen::MatrixBase<DerivedV>& v) {
  using Scalar = typename DerivedG::Scalar;
  const Mat3T<Scalar> conj = g * lie_matrix(v) * isometry_inverse(g);
  const MinkVec<Scalar> lhs = eta(conj);
  const MinkVec<Scalar> rhs = g * v;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

template <typename DerivedA, typename DerivedB>
typename DerivedA::Scalar triple_cross_check(const Eigen::MatrixBase<DerivedA>& u,
                                             const Eigen::MatrixBase<DerivedB>& v) {
  using Scalar = typename DerivedA::Scalar;
  const MinkVec<Scalar> lhs = mink_cross(u, mink_cross(v, u));
  const MinkVec<Scalar> rhs = -mink_inner(u, u) * v + mink_inner(u, v) * u;
  return (lhs - rhs).cwiseAbs().maxCoeff();
}

// exp(t * lie_matrix(v)) by scaling and squaring of a Taylor polynomial.
template <typename Derived>
Mat3T<typename Derived::Scalar> exp_so21(const Eigen::MatrixBase<Derived>& v,
                                         typename Derived::Scalar t) {
  using Scalar = typename Derived::Scalar;
  Mat3T<Scalar> a = lie_matrix(v) * t;
  const Scalar norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > Scalar(0.25)) {
    squarings = int(std::ceil(std::log2(double(norm) / 0.25)));
    a /= Scalar(std::ldexp(1.0, squarings));
  }
  Mat3T<Scalar> result = Mat3T<Scalar>::Identity();
  Mat3T<Scalar> term = Mat3T<Scalar>::Identity();
  for (int k = 1; k <= 18; ++k) {
    term = term * a / Scalar(k);
    result += term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

template <typename Scalar = double>
Mat3T<Scalar> rotation_e0(Scalar theta) {
  using std::cos;
  using std::sin;
  Mat3T<Scalar> r;
  r << cos(theta), -sin(theta), Scalar(0),
       sin(theta), cos(theta), Scalar(0),
       Scalar(0), Scalar(0), Scalar(1);
  return r;
}

// Translation by hyperbolic distance s along the x1 axis.
template <typename Scalar = double>
Mat3T<Scalar> boost_x(Scalar s) {
  using std::cosh;
  using std::sinh;
  Mat3T<Scalar> b;
  b << cosh(s), Scalar(0), sinh(s),
       Scalar(0), Scalar(1), Scalar(0),
       sinh(s), Scalar(0), cosh(s);
  return b;
}

// The pure boost taking e0 to the hyperboloid point p.
template <typename Derived>
Mat3T<typename Derived::Scalar> boost_from_origin(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Matrix<Scalar, 2, 1> s(p(0), p(1));
  Mat3T<Scalar> b;
  b.template topLeftCorner<2, 2>() =
      Eigen::Matrix<Scalar, 2, 2>::Identity() + s * s.transpose() / (Scalar(1) + p(2));
  b.template topRightCorner<2, 1>() = s;
  b.template bottomLeftCorner<1, 2>() = s.transpose();
  b(2, 2) = p(2);
  return b;
}

// Re-projects a near-isometry onto SO+(2,1) by Minkowski Gram-Schmidt on its
// columns, starting from the time-like one.
template <typename Derived>
Mat3T<typename Derived::Scalar> reorthonormalize(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using std::sqrt;
  MinkVec<Scalar> c2 = m.col(2);
  c2 /= sqrt(-mink_inner(c2, c2));
  MinkVec<Scalar> c0 = m.col(0);
  c0 += mink_inner(c0, c2) * c2;
  c0 /= sqrt(mink_inner(c0, c0));
  MinkVec<Scalar> c1 = m.col(1);
  c1 += mink_inner(c1, c2) * c2;
  c1 -= mink_inner(c1, c0) * c0;
  c1 /= sqrt(mink_inner(c1, c1));
  Mat3T<Scalar> out;
  out.col(0) = c0;
  out.col(1) = c1;
  out.col(2) = c2;
  if (out.determinant() < 0) out.col(1) = -c1;
  return out;
}

// max |m^T J m - J| relative to the squared size of m.
template <typename Derived>
typename Derived::Scalar isometry_defect(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Mat3T<Scalar> j = minkowski_metric<Scalar>();
  const Scalar scale = std::max(Scalar(1), m.cwiseAbs().maxCoeff());
  return (m.transpose() * j * m - j).cwiseAbs().maxCoeff() / (scale * scale);
}

// Gram-Schmidt is only applied when the defect exceeds `tol`: projecting a
// large boost that is already accurate would lose more than it gains.
template <typename Derived>
Mat3T<typename Derived::Scalar> repair_isometry(const Eigen::MatrixBase<Derived>& m, double tol = 1e-13) {
  if (isometry_defect(m) > tol) return reorthonormalize(m);
  return m;
}

// Central projection to the Klein disk.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, 2, 1> klein(const Eigen::MatrixBase<Derived>& x) {
  return {x(0) / x(2), x(1) / x(2)};
}

}  // namespace hmap
