#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nilgauss/algebra.hpp"
#include "nilgauss/dual.hpp"

namespace nilgauss {

// A point of the simply connected group in model coordinates. Carries no
// reference to its model; only the length is checked.
struct GroupPoint {
  Eigen::VectorXd coords;
};

// Concrete global coordinates on N. Both supported models have a frame
// field affine in the coordinates and a product that is bilinear up to the
// additive part:
//   frame_field(p) = I + sum_k p_k A_k
//   (p . q)_c     = p_c + q_c + sum_{a,b} P_{abc} p_a q_b
// Column a of frame_field(p) holds the coordinate components of the
// left-invariant field extending basis vector e_a.
class CoordinateModel {
 public:
  CoordinateModel(std::string name, NilpotentAlgebra algebra,
                  std::vector<Eigen::MatrixXd> frame_slopes, std::vector<double> product);

  const std::string& name() const { return name_; }
  const NilpotentAlgebra& algebra() const { return algebra_; }
  int dim() const { return algebra_.dim_total(); }

  // Writes frame_field(p) column-major into `out` (dim*dim entries).
  template <class T>
  void frame_field_into(std::span<const T> p, std::span<T> out) const {
    const int n = dim();
    for (int col = 0; col < n; ++col)
      for (int row = 0; row < n; ++row) out[col * n + row] = T(row == col ? 1.0 : 0.0);
    for (int k = 0; k < n; ++k) {
      const Eigen::MatrixXd& a = frame_slopes_[k];
      for (int col = 0; col < n; ++col)
        for (int row = 0; row < n; ++row)
          if (a(row, col) != 0.0) out[col * n + row] += p[k] * a(row, col);
    }
  }

  template <class T>
  std::vector<T> multiply_generic(std::span<const T> p, std::span<const T> q) const {
    const int n = dim();
    std::vector<T> out(n);
    for (int c = 0; c < n; ++c) out[c] = p[c] + q[c];
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          const double w = product_[(static_cast<std::size_t>(a) * n + b) * n + c];
          if (w != 0.0) out[c] += p[a] * q[b] * w;
        }
    return out;
  }

  Eigen::MatrixXd frame_field(const Eigen::VectorXd& p) const;

  // d/dp_k of frame_field at p, by forward-mode differentiation.
  std::vector<Eigen::MatrixXd> frame_field_derivatives(const Eigen::VectorXd& p) const;

  GroupPoint multiply(const GroupPoint& p, const GroupPoint& q) const;
  GroupPoint identity() const { return {Eigen::VectorXd::Zero(dim())}; }

 private:
  void check_point(const Eigen::VectorXd& p) const;

  std::string name_;
  NilpotentAlgebra algebra_;
  std::vector<Eigen::MatrixXd> frame_slopes_;
  std::vector<double> product_;
};

// Exponential coordinates: p . q = p + q + 1/2 [p, q]; the left-invariant
// extension of e_a at p is e_a + 1/2 [p, e_a].
CoordinateModel exp_model(const NilpotentAlgebra& alg);

// Nil with X = d/dx, Y = d/dy + x d/dz, Z = d/dz over heisenberg(1) (K=X,
// L=Y, Z) and product (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y').
CoordinateModel nil_polarized_model();

// "exp" or "nil_polarized".
CoordinateModel model_by_name(const std::string& name, const NilpotentAlgebra& alg);

// g_ij(p) = sum_a B_ai B_aj with B = frame_field(p)^{-1}.
Eigen::MatrixXd coordinate_metric(const CoordinateModel& model, const Eigen::VectorXd& p);

// Gamma^k_ij(p); result[k](i, j).
std::vector<Eigen::MatrixXd> christoffels(const CoordinateModel& model, const Eigen::VectorXd& p);

}  // namespace nilgauss
