#include "nilgauss/geometry.hpp"

#include <cmath>

#include "nilgauss/error.hpp"

namespace nilgauss {

AlgebraVector connection(const NilpotentAlgebra& alg, const AlgebraVector& a,
                         const AlgebraVector& b) {
  const AlgebraVector av = alg.v_part(a), az = alg.z_part(a);
  const AlgebraVector bv = alg.v_part(b), bz = alg.z_part(b);
  return 0.5 * alg.bracket(av, bv) - 0.5 * alg.j_raw(bz, av) - 0.5 * alg.j_raw(az, bv);
}

AlgebraVector curvature(const NilpotentAlgebra& alg, const AlgebraVector& x,
                        const AlgebraVector& y, const AlgebraVector& w) {
  const AlgebraVector xv = alg.v_part(x), xz = alg.z_part(x);
  const AlgebraVector yv = alg.v_part(y), yz = alg.z_part(y);
  const AlgebraVector wv = alg.v_part(w), wz = alg.z_part(w);
  auto J = [&](const AlgebraVector& z, const AlgebraVector& v) { return alg.j_raw(z, v); };
  auto br = [&](const AlgebraVector& u, const AlgebraVector& v) { return alg.bracket(u, v); };

  AlgebraVector r = alg.zero();
  // R(X,Y)X*
  r += 0.5 * J(br(xv, yv), wv) - 0.25 * J(br(yv, wv), xv) + 0.25 * J(br(xv, wv), yv);
  // R(X,Z)Y and R(Z,X)Y = -R(X,Z)Y
  r += -0.25 * br(xv, J(yz, wv));
  r += 0.25 * br(yv, J(xz, wv));
  // R(X,Y)Z
  r += -0.25 * br(xv, J(wz, yv)) + 0.25 * br(yv, J(wz, xv));
  // R(X,Z)Z* and R(Z,X)Z* = -R(X,Z)Z*
  r += -0.25 * J(yz, J(wz, xv));
  r += 0.25 * J(xz, J(wz, yv));
  // R(Z,Z*)X
  r += -0.25 * J(yz, J(xz, wv)) + 0.25 * J(xz, J(yz, wv));
  // R(Z,Z*)Z** = 0
  return r;
}

AlgebraVector curvature_oracle(const NilpotentAlgebra& alg, const AlgebraVector& x,
                               const AlgebraVector& y, const AlgebraVector& w) {
  return connection(alg, x, connection(alg, y, w)) - connection(alg, y, connection(alg, x, w)) -
         connection(alg, alg.bracket(x, y), w);
}

double ricci(const NilpotentAlgebra& alg, const AlgebraVector& a, const AlgebraVector& b) {
  const int q = alg.dim_v();
  const Eigen::VectorXd av = a.head(q), bv = b.head(q);
  double vv = 0.0;
  for (int k = q; k < alg.dim_total(); ++k) {
    const Eigen::MatrixXd j = alg.j_matrix(alg.basis(k));
    vv += 0.5 * av.dot(j * j * bv);
  }
  const Eigen::MatrixXd ja = alg.j_matrix(alg.z_part(a));
  const Eigen::MatrixXd jb = alg.j_matrix(alg.z_part(b));
  const double zz = -0.25 * (ja * jb).trace();
  return vv + zz;
}

double ricci_identity_check(const NilpotentAlgebra& alg, const AlgebraVector& x,
                            const AlgebraVector& y, const std::vector<AlgebraVector>& frame,
                            double tol) {
  const int q = alg.dim_v();
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(q, q);
  for (const auto& v : frame) {
    if (v.size() != alg.dim_total()) {
      throw Error(ErrorCode::DimensionMismatch, "frame vector has wrong length");
    }
    if (v.tail(alg.dim_center()).cwiseAbs().maxCoeff() > tol) {
      throw Error(ErrorCode::NotInSubspace, "frame vectors must lie in V");
    }
    gram += v.head(q) * v.head(q).transpose();
  }
  const double defect = (gram - Eigen::MatrixXd::Identity(q, q)).cwiseAbs().maxCoeff();
  if (defect > tol) {
    throw Error(ErrorCode::NotInSubspace,
                "frame is not orthonormal on V (defect " + std::to_string(defect) + ")");
  }
  double lhs = 0.0;
  for (const auto& xi : frame) {
    lhs += alg.j_raw(alg.bracket(x, xi), xi).dot(y);
  }
  return std::abs(lhs - 2.0 * ricci(alg, x, y));
}

}  // namespace nilgauss
