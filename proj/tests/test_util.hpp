#pragma once

#include <random>
#include <vector>

#include <Eigen/Dense>

#include "nilgauss/algebra.hpp"

namespace nilgauss::testing {

inline Eigen::VectorXd random_vector(std::mt19937_64& rng, int n, double scale = 1.0) {
  std::normal_distribution<double> d(0.0, scale);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = d(rng);
  return v;
}

inline Eigen::VectorXd random_unit(std::mt19937_64& rng, int n) {
  Eigen::VectorXd v = random_vector(rng, n);
  return v / v.norm();
}

inline Eigen::MatrixXd random_orthogonal(std::mt19937_64& rng, int n) {
  Eigen::MatrixXd a(n, n);
  for (int j = 0; j < n; ++j) a.col(j) = random_vector(rng, n);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  return qr.householderQ();
}

// V = span(e1, e2, e3), Z = span(e4, e5), not of Heisenberg type.
inline NilpotentAlgebra generic_two_step() {
  return NilpotentAlgebra::from_brackets(
      5, 2, {{1, 2, 4, 1.0}, {1, 3, 5, 0.7}, {1, 3, 4, 0.2}, {2, 3, 5, 0.5}});
}

inline AlgebraVector random_in(const NilpotentAlgebra& alg, std::mt19937_64& rng, bool v_part,
                               bool z_part) {
  AlgebraVector x = random_vector(rng, alg.dim_total());
  if (!v_part) x = alg.z_part(x);
  if (!z_part) x = alg.v_part(x);
  return x;
}

// Orthonormal basis of V embedded in the algebra, rotated by a random
// orthogonal matrix.
inline std::vector<AlgebraVector> random_v_frame(const NilpotentAlgebra& alg, std::mt19937_64& rng) {
  const int q = alg.dim_v();
  const Eigen::MatrixXd r = random_orthogonal(rng, q);
  std::vector<AlgebraVector> frame;
  for (int i = 0; i < q; ++i) {
    AlgebraVector x = alg.zero();
    x.head(q) = r.col(i);
    frame.push_back(x);
  }
  return frame;
}

}  // namespace nilgauss::testing
