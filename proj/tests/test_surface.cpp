#include <gtest/gtest.h>

#include <cmath>

#include "nilgauss/catalog.hpp"
#include "nilgauss/error.hpp"
#include "nilgauss/surface.hpp"
#include "test_util.hpp"

using namespace nilgauss;

namespace {

const Box kLeafBox{{{-3.0, 3.0}, {-1.0, 1.0}}};
const Box kSquare{{{-1.0, 1.0}, {-1.0, 1.0}}};

Eigen::VectorXd uv(double a, double b) { return Eigen::Vector2d(a, b); }

std::shared_ptr<const CoordinateModel> abelian_model() {
  return std::make_shared<const CoordinateModel>(
      exp_model(NilpotentAlgebra(3, 1, std::vector<double>(27, 0.0))));
}

void expect_frame_invariants(const NilpotentAlgebra& alg, const AdaptedFrame& f) {
  EXPECT_LT(f.gram_residual(), 1e-10);
  const int q = f.q, n = f.n;
  for (int i = 1; i < q; ++i) {
    EXPECT_TRUE(alg.z_part(f.y(i)).isZero(1e-14));
    EXPECT_TRUE(f.y(i).isApprox(f.x(i)));
  }
  EXPECT_TRUE((f.y(q) - (f.x(q) - f.z(q))).isZero(1e-14));
  for (int i = q + 1; i <= n; ++i) EXPECT_TRUE(alg.v_part(f.y(i)).isZero(1e-14));
  EXPECT_TRUE((f.normal() - (f.x_normal + f.z_normal)).isZero(1e-14));
  EXPECT_NEAR(f.x(q).norm(), f.z_norm(), 1e-12);
  EXPECT_NEAR(f.z(q).norm(), f.x_norm(), 1e-12);
  EXPECT_GE(f.lambda, 0.0);
  EXPECT_GE(f.mu, 0.0);
  if (f.x(q).norm() > 1e-12) EXPECT_TRUE((f.x_normal - f.lambda * f.x(q)).isZero(1e-12));
  if (f.z(q).norm() > 1e-12) EXPECT_TRUE((f.z_normal - f.mu * f.z(q)).isZero(1e-12));
  if (f.lambda * f.mu > 0) {
    EXPECT_TRUE((alg.j_raw(f.z(q), f.x(q)) - alg.j_raw(f.z_normal, f.x_normal)).isZero(1e-10));
  }
}

}  // namespace

TEST(GaussMap, VerticalPlaneIsL) {
  const auto plane = nil_vertical_plane(kSquare);
  for (double s : {-0.5, 0.0, 0.8}) {
    EXPECT_TRUE(gauss_map(plane, uv(s, 0.3)).isApprox(Eigen::Vector3d(0, 1, 0), 1e-14));
  }
  EXPECT_TRUE(gauss_map(plane.with_orientation(1), uv(0.1, 0.1)).isApprox(Eigen::Vector3d(0, -1, 0)));
}

TEST(GaussMap, FoliationLeaf) {
  const auto leaf = nil_foliation_leaf(Eigen::Vector3d(0.2, -1.0, 0.5), kLeafBox);
  for (double u1 : {-1.0, 0.3, 1.8}) {
    const double x = 0.2 + u1;
    const Eigen::Vector3d expect = Eigen::Vector3d(0, x, 1) / std::sqrt(1 + x * x);
    EXPECT_TRUE(gauss_map(leaf, uv(u1, 0.4)).isApprox(expect, 1e-14));
  }
}

TEST(GaussMap, UnitAndNormalOnRandomCharts) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto alg = seed % 2 ? heisenberg(2) : heisenberg(1);
    const auto chart = random_graph(alg, seed);
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(chart.param_dim(), 0.1);
    const auto g = gauss_map(chart, u);
    EXPECT_NEAR(g.norm(), 1.0, 1e-10);
    const auto t = algebra_tangents(chart, u);
    EXPECT_LT((t.transpose() * g).cwiseAbs().maxCoeff(), 1e-9);
    EXPECT_TRUE(gauss_map(chart.with_orientation(-1), u).isApprox(-g));
  }
}

TEST(GaussMap, RankDeficientChart) {
  const auto model = std::make_shared<const CoordinateModel>(nil_polarized_model());
  SurfaceChart bad(model, {parse_expression("u1"), parse_expression("u1"), parse_expression("0")},
                   kSquare);
  try {
    gauss_map(bad, uv(0.1, 0.2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::RankDeficient);
  }
}

TEST(Chart, ConstructionErrors) {
  const auto model = std::make_shared<const CoordinateModel>(nil_polarized_model());
  EXPECT_THROW(SurfaceChart(model, {parse_expression("u1")}, kSquare), Error);
  EXPECT_THROW(SurfaceChart(model, {parse_expression("u1"), parse_expression("u2"), parse_expression("u3")},
                            kSquare),
               Error);
  EXPECT_THROW(SurfaceChart(model, {parse_expression("u1"), parse_expression("u2"), parse_expression("0")},
                            Box{{{1.0, 0.0}, {0.0, 1.0}}}),
               Error);
  EXPECT_THROW(cylinder_chart("1", "2", kSquare), Error);
  EXPECT_THROW(cylinder_chart("cos(s)", "q", kSquare), ParseError);
  EXPECT_THROW(nil_vertical_plane(kSquare).point(Eigen::Vector3d::Zero()), Error);
}

TEST(AdaptedFrame, LeafExample) {
  const auto alg = heisenberg(1);
  const double x = 0.8, s = std::sqrt(1 + x * x);
  const AlgebraVector eta = Eigen::Vector3d(0, x, 1) / s;
  const auto f = adapted_frame(alg, eta);
  EXPECT_EQ(f.kind, FrameKind::Heisenberg);
  expect_frame_invariants(alg, f);
  EXPECT_NEAR(f.x_norm(), x / s, 1e-15);
  EXPECT_NEAR(f.z_norm(), 1 / s, 1e-15);
  EXPECT_TRUE(f.y(1).isApprox(Eigen::Vector3d(1, 0, 0)));
  EXPECT_TRUE(f.y(2).isApprox(Eigen::Vector3d(0, 1, -x) / s));
  EXPECT_NEAR(f.lambda, x, 1e-14);
  EXPECT_NEAR(f.mu, 1 / x, 1e-14);
}

TEST(AdaptedFrame, DegenerateNormals) {
  const auto alg = heisenberg(1);
  const auto central = adapted_frame(alg, alg.basis(2));
  expect_frame_invariants(alg, central);
  EXPECT_EQ(central.lambda, 0.0);
  EXPECT_TRUE(central.z(1 + 1).isZero());
  EXPECT_NEAR(central.y(2).norm(), 1.0, 1e-15);
  EXPECT_TRUE(alg.z_part(central.y(2)).isZero());

  const auto horizontal = adapted_frame(alg, alg.basis(1));
  expect_frame_invariants(alg, horizontal);
  EXPECT_EQ(horizontal.mu, 0.0);
  EXPECT_TRUE(horizontal.x(2).isZero());
  EXPECT_NEAR(horizontal.z(2).norm(), 1.0, 1e-15);
  EXPECT_TRUE((horizontal.y(2) + horizontal.z(2)).isZero());
}

TEST(AdaptedFrame, RandomNormalsAllAlgebras) {
  std::mt19937_64 rng(51);
  for (const auto& alg : {heisenberg(1), heisenberg(2), heisenberg(3), quaternionic_heisenberg(),
                          nilgauss::testing::generic_two_step(), heisenberg_plus_abelian(1, 2)}) {
    for (int t = 0; t < 30; ++t) {
      const auto eta = nilgauss::testing::random_unit(rng, alg.dim_total());
      expect_frame_invariants(alg, adapted_frame(alg, eta));
      FrameOptions seeded;
      seeded.completion_seed = 1000 + t;
      expect_frame_invariants(alg, adapted_frame(alg, eta, seeded));
      FrameOptions generic;
      generic.kind = FrameKind::Generic;
      expect_frame_invariants(alg, adapted_frame(alg, eta, generic));
    }
    expect_frame_invariants(alg, adapted_frame(alg, alg.basis(0)));
    expect_frame_invariants(alg, adapted_frame(alg, alg.basis(alg.dim_total() - 1)));
  }
}

TEST(AdaptedFrame, DeterministicAndChecked) {
  const auto alg = heisenberg(2);
  const AlgebraVector eta = Eigen::VectorXd::Constant(5, 1.0 / std::sqrt(5.0));
  EXPECT_EQ(adapted_frame(alg, eta).matrix(), adapted_frame(alg, eta).matrix());
  EXPECT_THROW(adapted_frame(alg, 2.0 * eta), Error);
  FrameOptions heis;
  heis.kind = FrameKind::Heisenberg;
  EXPECT_THROW(adapted_frame(quaternionic_heisenberg(), Eigen::VectorXd::Unit(7, 0), heis), Error);
}

TEST(CentralTangents, CylinderAndLeaf) {
  const auto alg = heisenberg(1);
  const auto horizontal = adapted_frame(alg, alg.basis(0));
  const auto c = central_tangents(horizontal);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_TRUE(alg.v_part(c[0]).isZero());
  const auto tilted = adapted_frame(alg, Eigen::Vector3d(0, 0.6, 0.8));
  EXPECT_TRUE(central_tangents(tilted).empty());
  EXPECT_EQ(central_tangents(adapted_frame(quaternionic_heisenberg(), Eigen::VectorXd::Unit(7, 1))).size(), 3u);
}

TEST(ShapeData, FoliationLeaf) {
  const auto leaf = nil_foliation_leaf(Eigen::Vector3d::Zero(), kLeafBox);
  for (double x : {-1.5, 0.0, 0.5, 1.0, 2.0}) {
    const auto u = uv(x, 0.2);
    const auto sd = shape_data(leaf, u, adapted_frame(leaf.algebra(), gauss_map(leaf, u)));
    EXPECT_NEAR(sd.H, 0.0, 1e-12);
    EXPECT_NEAR(sd.norm_b2, std::pow(x * x - 1, 2) / (2 * std::pow(1 + x * x, 2)), 1e-12);
    EXPECT_LT(sd.symmetry_defect, 1e-12);
    EXPECT_NEAR(sd.H, sd.b.trace() / 2, 1e-15);
    EXPECT_NEAR(sd.norm_b2, sd.b.squaredNorm(), 1e-15);
    EXPECT_NEAR(mean_curvature(leaf, u), 0.0, 1e-12);
  }
}

TEST(ShapeData, VerticalPlane) {
  const auto plane = nil_vertical_plane(kSquare);
  const auto u = uv(0.4, -0.3);
  const auto sd = shape_data(plane, u, adapted_frame(plane.algebra(), gauss_map(plane, u)));
  EXPECT_NEAR(sd.H, 0.0, 1e-14);
  EXPECT_NEAR(sd.norm_b2, 0.5, 1e-14);
  EXPECT_TRUE(induced_metric(plane, u).isIdentity(1e-14));
}

TEST(ShapeData, AbelianPlaneIsTotallyGeodesic) {
  const auto chart = graph_chart(abelian_model(), "0.3*u1 - 0.7*u2 + 2", 2, kSquare);
  const auto u = uv(0.1, 0.5);
  const auto sd = shape_data(chart, u, adapted_frame(chart.algebra(), gauss_map(chart, u)));
  EXPECT_LT(sd.b.cwiseAbs().maxCoeff(), 1e-14);
}

TEST(ShapeData, SymmetricOnRandomCharts) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto alg = seed % 2 ? heisenberg(2) : heisenberg(1);
    const auto chart = random_graph(alg, 100 + seed);
    const Eigen::VectorXd u = Eigen::VectorXd::Constant(chart.param_dim(), -0.2);
    const auto sd = shape_data(chart, u, adapted_frame(alg, gauss_map(chart, u)));
    EXPECT_LT(sd.symmetry_defect, 1e-8);
  }
}

TEST(ShapeData, RejectsForeignFrame) {
  const auto plane = nil_vertical_plane(kSquare);
  const auto frame = adapted_frame(plane.algebra(), Eigen::Vector3d(0, 0, 1));
  try {
    shape_data(plane, uv(0, 0), frame);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongFrame);
  }
}

TEST(ShapeData, ReparametrizationInvariance) {
  const std::string height = random_height(2, 77);
  auto substitute = [](std::string s, const std::string& a, const std::string& b) {
    for (std::size_t pos = 0; (pos = s.find(a, pos)) != std::string::npos; pos += b.size()) {
      s.replace(pos, a.size(), b);
    }
    return s;
  };
  // u = A w + c with det A > 0.
  Eigen::Matrix2d A;
  A << 0.8, 0.3, -0.2, 0.9;
  const Eigen::Vector2d c(0.05, -0.1);
  const std::string x = "(0.8*w1 + 0.3*w2 + 0.05)";
  const std::string y = "(-0.2*w1 + 0.9*w2 - 0.1)";
  std::string h = substitute(substitute(height, "u1", "#1"), "u2", "#2");
  h = substitute(substitute(h, "#1", x), "#2", y);
  const auto model = std::make_shared<const CoordinateModel>(exp_model(heisenberg(1)));
  const auto base = graph_chart(model, height, 2, kSquare);
  const VariableMap vars = {{"w1", 0}, {"w2", 1}};
  SurfaceChart re(model, {parse_expression(x, vars), parse_expression(y, vars), parse_expression(h, vars)},
                  kSquare);
  for (const Eigen::Vector2d w : {Eigen::Vector2d(0.1, 0.2), Eigen::Vector2d(-0.3, 0.1)}) {
    const Eigen::VectorXd u = A * w + c;
    const auto g0 = gauss_map(base, u), g1 = gauss_map(re, w);
    EXPECT_TRUE((g0 - g1).isZero(1e-8));
    const auto s0 = shape_data(base, u, adapted_frame(model->algebra(), g0));
    const auto s1 = shape_data(re, w, adapted_frame(model->algebra(), g1));
    EXPECT_NEAR(s0.H, s1.H, 1e-8);
    EXPECT_NEAR(s0.norm_b2, s1.norm_b2, 1e-8);
  }
}

TEST(Derivatives, ConstantFieldAndLeaf) {
  const auto leaf = nil_foliation_leaf(Eigen::Vector3d::Zero(), kLeafBox);
  const auto u = uv(0.6, 0.0);
  const auto frame = adapted_frame(leaf.algebra(), gauss_map(leaf, u));
  const ScalarField constant = [](const Eigen::VectorXd&) { return 4.2; };
  EXPECT_EQ(frame_directional_derivative(leaf, u, constant, frame.y(1)), 0.0);
  const auto sample = sample_point(leaf, u);
  for (double d : sample.dH) EXPECT_NEAR(d, 0.0, 1e-9);
}

TEST(Derivatives, LinearInDirection) {
  const auto chart = random_graph(heisenberg(1), 5);
  const auto u = uv(0.1, -0.1);
  const auto frame = adapted_frame(chart.algebra(), gauss_map(chart, u));
  const ScalarField h = [&](const Eigen::VectorXd& v) { return mean_curvature(chart, v); };
  const double d1 = frame_directional_derivative(chart, u, h, frame.y(1));
  const double d2 = frame_directional_derivative(chart, u, h, frame.y(2));
  const double d12 = frame_directional_derivative(chart, u, h, 0.5 * frame.y(1) + 2.0 * frame.y(2));
  EXPECT_NEAR(d12, 0.5 * d1 + 2.0 * d2, 1e-7);
}

TEST(Derivatives, BoundaryProximity) {
  const auto plane = nil_vertical_plane(kSquare);
  const auto u = uv(1.0 - 1e-5, 0.0);
  const ScalarField f = [](const Eigen::VectorXd& v) { return v(0); };
  try {
    frame_directional_derivative(plane, u, f, Eigen::Vector3d(1, 0, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BoundaryProximity);
  }
  const VectorField g = [](const Eigen::VectorXd& v) { return v; };
  EXPECT_THROW(laplace_beltrami(plane, u, g), Error);
  EXPECT_THROW(frame_directional_derivative(plane, uv(0, 0), f, Eigen::Vector3d(0, 1, 0)), Error);
}

TEST(LaplaceBeltrami, FlatPlaneHarmonicCoordinates) {
  const auto chart = graph_chart(abelian_model(), "0", 2, kSquare);
  const VectorField f = [](const Eigen::VectorXd& v) {
    return Eigen::Vector2d(v(0) * v(0) - v(1) * v(1), v(0) * v(0) + v(1) * v(1)).eval();
  };
  const auto lap = laplace_beltrami(chart, uv(0.2, 0.3), f);
  EXPECT_NEAR(lap(0), 0.0, 1e-7);
  EXPECT_NEAR(lap(1), 4.0, 1e-7);
}
