#include <gtest/gtest.h>

#include "nilgauss/error.hpp"
#include "nilgauss/geometry.hpp"
#include "nilgauss/group_model.hpp"
#include "test_util.hpp"

using namespace nilgauss;
using nilgauss::testing::random_vector;

namespace {

std::vector<CoordinateModel> models() {
  return {exp_model(heisenberg(1)), exp_model(heisenberg(2)),
          exp_model(nilgauss::testing::generic_two_step()), nil_polarized_model()};
}

// Differential of left translation by p at q, by forward-mode AD.
Eigen::MatrixXd left_translation_differential(const CoordinateModel& m, const Eigen::VectorXd& p,
                                              const Eigen::VectorXd& q) {
  const int n = m.dim();
  std::vector<Dual<double>> pd(n), qd(n);
  Eigen::MatrixXd d(n, n);
  for (int col = 0; col < n; ++col) {
    for (int i = 0; i < n; ++i) {
      pd[i] = Dual<double>(p(i));
      qd[i] = Dual<double>(q(i), i == col ? 1.0 : 0.0);
    }
    const auto r = m.multiply_generic<Dual<double>>(pd, qd);
    for (int i = 0; i < n; ++i) d(i, col) = r[i].eps;
  }
  return d;
}

}  // namespace

TEST(ExpModel, FrameAtOriginAndExamples) {
  const auto m = exp_model(heisenberg(1));
  EXPECT_TRUE(m.frame_field(Eigen::Vector3d::Zero()).isIdentity());
  const Eigen::MatrixXd f = m.frame_field(Eigen::Vector3d(1, 0, 0));
  EXPECT_DOUBLE_EQ(f(2, 1), 0.5);
  const auto r = m.multiply({Eigen::Vector3d(1, 0, 0)}, {Eigen::Vector3d(0, 1, 0)});
  EXPECT_TRUE(r.coords.isApprox(Eigen::Vector3d(1, 1, 0.5)));
}

TEST(ExpModel, AbelianFrameIsConstant) {
  const auto m = exp_model(NilpotentAlgebra(3, 1, std::vector<double>(27, 0.0)));
  EXPECT_TRUE(m.frame_field(Eigen::Vector3d(0.3, -2.0, 5.0)).isIdentity());
}

TEST(NilModel, PaperFrameAndMetric) {
  const auto m = nil_polarized_model();
  const double x = 0.7;
  const Eigen::Vector3d p(x, -1.2, 3.0);
  const Eigen::MatrixXd f = m.frame_field(p);
  EXPECT_TRUE(f.col(1).isApprox(Eigen::Vector3d(0, 1, x)));
  EXPECT_TRUE(f.col(0).isApprox(Eigen::Vector3d(1, 0, 0)));
  EXPECT_TRUE(f.col(2).isApprox(Eigen::Vector3d(0, 0, 1)));
  EXPECT_TRUE(m.frame_field(Eigen::Vector3d(0, 4, -2)).isIdentity());
  Eigen::Matrix3d g;
  g << 1, 0, 0, 0, 1 + x * x, -x, 0, -x, 1;
  EXPECT_TRUE(coordinate_metric(m, p).isApprox(g, 1e-14));
  const auto r = m.multiply({Eigen::Vector3d(1, 0, 0)}, {Eigen::Vector3d(0, 1, 0)});
  EXPECT_TRUE(r.coords.isApprox(Eigen::Vector3d(1, 1, 1)));
}

TEST(ModelByName, Lookup) {
  EXPECT_EQ(model_by_name("exp", heisenberg(2)).dim(), 5);
  EXPECT_EQ(model_by_name("nil_polarized", heisenberg(1)).name(), "nil_polarized");
  EXPECT_THROW(model_by_name("nil_polarized", heisenberg(2)), Error);
  EXPECT_THROW(model_by_name("polar", heisenberg(1)), Error);
}

TEST(Models, GroupAxioms) {
  std::mt19937_64 rng(31);
  for (const auto& m : models()) {
    const int n = m.dim();
    for (int t = 0; t < 20; ++t) {
      const GroupPoint p{random_vector(rng, n)}, q{random_vector(rng, n)}, r{random_vector(rng, n)};
      EXPECT_TRUE(m.multiply(p, m.identity()).coords.isApprox(p.coords));
      EXPECT_TRUE(m.multiply(m.identity(), p).coords.isApprox(p.coords));
      const auto lhs = m.multiply(m.multiply(p, q), r).coords;
      const auto rhs = m.multiply(p, m.multiply(q, r)).coords;
      EXPECT_TRUE((lhs - rhs).isZero(1e-12));
    }
  }
}

TEST(Models, LeftInvariance) {
  std::mt19937_64 rng(32);
  for (const auto& m : models()) {
    const int n = m.dim();
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXd p = random_vector(rng, n), q = random_vector(rng, n);
      const Eigen::MatrixXd pushed = left_translation_differential(m, p, q) * m.frame_field(q);
      const Eigen::MatrixXd target = m.frame_field(m.multiply({p}, {q}).coords);
      EXPECT_TRUE((pushed - target).isZero(1e-9));
    }
  }
}

TEST(Models, FrameIsOrthonormalForMetric) {
  std::mt19937_64 rng(33);
  for (const auto& m : models()) {
    const int n = m.dim();
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXd p = random_vector(rng, n);
      const Eigen::MatrixXd f = m.frame_field(p);
      const Eigen::MatrixXd g = coordinate_metric(m, p);
      EXPECT_TRUE((f.transpose() * g * f - Eigen::MatrixXd::Identity(n, n)).isZero(1e-10));
      EXPECT_TRUE((g - g.transpose()).isZero(0.0));
      EXPECT_GT(g.ldlt().vectorD().minCoeff(), 0.0);
    }
  }
}

TEST(Models, ChristoffelsSymmetricAndCompatible) {
  std::mt19937_64 rng(34);
  for (const auto& m : models()) {
    const int n = m.dim();
    EXPECT_TRUE(coordinate_metric(m, Eigen::VectorXd::Zero(n)).isIdentity(1e-14));
    for (int t = 0; t < 10; ++t) {
      const Eigen::VectorXd p = random_vector(rng, n);
      const auto gamma = christoffels(m, p);
      const Eigen::MatrixXd g = coordinate_metric(m, p);
      const double h = 1e-5;
      for (int k = 0; k < n; ++k) {
        EXPECT_TRUE((gamma[k] - gamma[k].transpose()).isZero(1e-12));
        // d_k g_ij = g_lj Gamma^l_ki + g_il Gamma^l_kj
        const Eigen::VectorXd e = Eigen::VectorXd::Unit(n, k);
        const Eigen::MatrixXd dg =
            (coordinate_metric(m, p + h * e) - coordinate_metric(m, p - h * e)) / (2 * h);
        Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int l = 0; l < n; ++l) rhs(i, j) += g(l, j) * gamma[l](k, i) + g(i, l) * gamma[l](k, j);
        EXPECT_TRUE((dg - rhs).isZero(1e-6));
      }
    }
  }
}

TEST(Models, ChristoffelsReproduceConnection) {
  std::mt19937_64 rng(35);
  for (const auto& m : models()) {
    const int n = m.dim();
    const auto& alg = m.algebra();
    for (int t = 0; t < 20; ++t) {
      const Eigen::VectorXd p = random_vector(rng, n);
      const Eigen::MatrixXd f = m.frame_field(p);
      const auto df = m.frame_field_derivatives(p);
      const auto gamma = christoffels(m, p);
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          const Eigen::VectorXd A = f.col(a), B = f.col(b);
          Eigen::VectorXd cov = Eigen::VectorXd::Zero(n);
          for (int k = 0; k < n; ++k) {
            cov += A(k) * df[k].col(b);
            cov(k) += A.dot(gamma[k] * B);
          }
          const Eigen::VectorXd in_frame = f.partialPivLu().solve(cov);
          EXPECT_TRUE((in_frame - connection(alg, alg.basis(a), alg.basis(b))).isZero(1e-9));
        }
      }
    }
  }
}
