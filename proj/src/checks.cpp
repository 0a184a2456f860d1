#include "nilgauss/checks.hpp"

#include <algorithm>
#include <cmath>
#include <array>
#include <limits>
#include <optional>

#include "nilgauss/error.hpp"
#include "nilgauss/geometry.hpp"

namespace nilgauss {

double Prop3Residuals::max() const { return std::max({off_diagonal, second, trace}); }

Prop3Residuals prop3_residuals(const ShapeData& shape, const AdaptedFrame& frame) {
  if (frame.kind != FrameKind::Heisenberg) {
    throw Error(ErrorCode::WrongFrame, "harmonic CMC residuals need the special J-basis frame");
  }
  const int m = frame.q / 2;
  auto b = [&](int i, int j) { return shape.b(i - 1, j - 1); };
  const double a = frame.x_norm();
  const double bz = frame.z_norm();
  Prop3Residuals r;
  for (int k = 1; k <= 2 * m - 1; ++k) {
    if (k == m) continue;
    r.off_diagonal = std::max(r.off_diagonal, std::abs(b(2 * m, k)));
  }
  r.second = std::abs(bz * (a * a - 2.0 * b(2 * m, m)));
  double diag = 3.0 * b(2 * m, 2 * m);
  for (int i = 1; i <= 2 * m - 1; ++i) diag += b(i, i);
  r.trace = std::abs(bz * diag);
  return r;
}

JacobiResult jacobi_check(const SurfaceChart& chart, const std::vector<Eigen::VectorXd>& points,
                          const Eigen::VectorXd& v, const FdOptions& fd) {
  const NilpotentAlgebra& alg = chart.algebra();
  if (v.size() != alg.dim_total()) throw Error(ErrorCode::DimensionMismatch, "Jacobi vector length");
  JacobiResult r;
  r.min_w = std::numeric_limits<double>::infinity();
  const VectorField w = [&](const Eigen::VectorXd& p) {
    return Eigen::VectorXd::Constant(1, gauss_map(chart, p).dot(v));
  };
  for (const auto& u : points) {
    const AlgebraVector g = gauss_map(chart, u);
    const ShapeData shape = shape_data(chart, u, adapted_frame(alg, g));
    const double wu = g.dot(v);
    const double lap = laplace_beltrami(chart, u, w, fd)(0);
    const double residual = lap + (ricci(alg, g, g) + shape.norm_b2) * wu;
    r.max_residual = std::max(r.max_residual, std::abs(residual));
    r.min_w = std::min(r.min_w, wu);
  }
  return r;
}

namespace {

// Projection of `dir` on the span of the central tangents at u, normalized.
std::optional<AlgebraVector> central_direction(const SurfaceChart& chart, const Eigen::VectorXd& u,
                                               const AlgebraVector& dir) {
  const AdaptedFrame f = adapted_frame(chart.algebra(), gauss_map(chart, u));
  AlgebraVector p = AlgebraVector::Zero(dir.size());
  for (const auto& y : central_tangents(f, 1e-8)) p += y.dot(dir) * y;
  const double norm = p.norm();
  if (norm < 1e-6) return std::nullopt;
  return AlgebraVector(p / norm);
}

}  // namespace

Corollary1Result corollary1_check(const SurfaceChart& chart,
                                  const std::vector<Eigen::VectorXd>& points,
                                  const Corollary1Options& options) {
  const NilpotentAlgebra& alg = chart.algebra();
  Corollary1Result r;
  for (const auto& u : points) {
    const PointSample s = sample_point(chart, u, {}, options.fd);
    const auto verdict = harmonicity(laplacian_general(alg, s.frame, s.shape, s.dH),
                                     options.harmonic_tol);
    if (!verdict.harmonic) {
      r.skipped = true;
      r.reason = "Gauss map is not harmonic (defect " + std::to_string(verdict.defect) + ")";
      return r;
    }
  }
  const double margin = 3.0 * options.fd.base_step;
  for (const auto& u0 : points) {
    const AdaptedFrame f0 = adapted_frame(alg, gauss_map(chart, u0));
    const double h0 = mean_curvature(chart, u0);
    for (const auto& start : central_tangents(f0, 1e-8)) {
      ++r.curves;
      AlgebraVector dir = start;
      Eigen::VectorXd u = u0;
      // du/ds = chart direction of the central tangent closest to `dir`.
      auto velocity = [&](const Eigen::VectorXd& p) -> std::optional<Eigen::VectorXd> {
        if (!chart.domain().contains(p, margin)) return std::nullopt;
        auto d = central_direction(chart, p, dir);
        if (!d) return std::nullopt;
        return chart_direction(chart, p, *d);
      };
      for (int step = 0; step < options.steps; ++step) {
        const double h = options.step;
        auto k1 = velocity(u);
        if (!k1) break;
        auto k2 = velocity(u + 0.5 * h * *k1);
        if (!k2) break;
        auto k3 = velocity(u + 0.5 * h * *k2);
        if (!k3) break;
        auto k4 = velocity(u + h * *k3);
        if (!k4) break;
        const Eigen::VectorXd next = u + h / 6.0 * (*k1 + 2.0 * *k2 + 2.0 * *k3 + *k4);
        if (!chart.domain().contains(next, margin)) break;
        auto d = central_direction(chart, next, dir);
        if (!d) break;
        dir = *d;
        u = next;
        r.max_variation = std::max(r.max_variation, std::abs(mean_curvature(chart, u) - h0));
      }
    }
  }
  if (r.curves == 0) r.reason = "no central tangent directions";
  return r;
}

double GaussCodazziResult::max_residual() const { return std::max({codazzi_1, codazzi_2, gauss}); }

GaussCodazziResult gauss_codazzi_residuals(const SurfaceChart& chart, const Eigen::VectorXd& u,
                                           const FdOptions& fd, double degenerate_tol) {
  const NilpotentAlgebra& alg = chart.algebra();
  if (alg.dim_total() != 3 || alg.dim_center() != 1 || !is_heisenberg_type(alg)) {
    throw Error(ErrorCode::WrongAlgebra, "Gauss-Codazzi residuals need a surface in Nil");
  }
  const FrameOptions heis{FrameKind::Heisenberg, std::nullopt, 1e-12};
  auto frame_at = [&](const Eigen::VectorXd& p) {
    return adapted_frame(alg, gauss_map(chart, p), heis);
  };
  const AdaptedFrame f = frame_at(u);
  GaussCodazziResult r;
  r.ab = f.x_norm() * f.z_norm();
  if (f.x_norm() < degenerate_tol || f.z_norm() < degenerate_tol) {
    r.skipped = true;
    r.reason = "normal is purely horizontal or purely central";
    return r;
  }
  const AlgebraVector& F1 = f.y(1);
  const AlgebraVector& F2 = f.y(2);
  const AlgebraVector& eta = f.y(3);
  r.curvature_ab = curvature(alg, F1, F2, F1).dot(eta);

  // omega(k, i, l) = <nabla_{F_k} F_i, F_l>, at an arbitrary point.
  auto connection_forms = [&](const Eigen::VectorXd& p) {
    const AdaptedFrame fp = frame_at(p);
    std::array<Eigen::Matrix2d, 2> omega;
    for (int k = 0; k < 2; ++k) {
      const Eigen::VectorXd w = chart_direction(chart, p, fp.ys[k]);
      for (int i = 0; i < 2; ++i) {
        const VectorField fi = [&](const Eigen::VectorXd& v) { return frame_at(v).ys[i]; };
        const AlgebraVector d =
            chart_directional_derivative(chart.domain(), p, fi, w, fd) +
            connection(alg, fp.ys[k], fp.ys[i]);
        for (int l = 0; l < 2; ++l) omega[k](i, l) = d.dot(fp.ys[l]);
      }
    }
    return omega;
  };

  const auto omega = connection_forms(u);
  const ShapeData shape = shape_data(chart, u, f);
  const Eigen::Matrix2d b = shape.b;
  const VectorField b_field = [&](const Eigen::VectorXd& p) -> Eigen::VectorXd {
    const Eigen::MatrixXd bp = shape_data(chart, p, frame_at(p)).b;
    return Eigen::Map<const Eigen::VectorXd>(bp.data(), 4);
  };
  const std::array<Eigen::VectorXd, 2> w = {chart_direction(chart, u, F1),
                                            chart_direction(chart, u, F2)};
  std::array<Eigen::Matrix2d, 2> db;
  for (int k = 0; k < 2; ++k) {
    const Eigen::VectorXd d = chart_directional_derivative(chart.domain(), u, b_field, w[k], fd);
    db[k] = Eigen::Map<const Eigen::Matrix2d>(d.data());
  }
  // (nabla_{F_k} B)(F_i, F_j)
  auto nabla_b = [&](int k, int i, int j) {
    double v = db[k](i, j);
    for (int l = 0; l < 2; ++l) v -= omega[k](i, l) * b(l, j) + omega[k](j, l) * b(i, l);
    return v;
  };
  r.codazzi_1 = std::abs(r.curvature_ab - nabla_b(0, 1, 0) + nabla_b(1, 0, 0));
  const double r122 = curvature(alg, F1, F2, F2).dot(eta);
  r.codazzi_2 = std::abs(r122 - nabla_b(0, 1, 1) + nabla_b(1, 0, 1));

  // Geodesic curvatures of the frame curves and the intrinsic curvature.
  const VectorField kappa = [&](const Eigen::VectorXd& p) -> Eigen::VectorXd {
    const auto om = connection_forms(p);
    return Eigen::Vector2d(om[0](0, 1), om[1](1, 0));
  };
  const double k1 = omega[0](0, 1);
  const double k2 = omega[1](1, 0);
  const double f1_k2 = chart_directional_derivative(chart.domain(), u, kappa, w[0], fd)(1);
  const double f2_k1 = chart_directional_derivative(chart.domain(), u, kappa, w[1], fd)(0);
  const double gauss_curvature = f1_k2 + f2_k1 - k1 * k1 - k2 * k2;
  const double ambient = curvature(alg, F1, F2, F2).dot(F1);
  r.gauss = std::abs(gauss_curvature - b.determinant() - ambient);
  return r;
}

}  // namespace nilgauss
