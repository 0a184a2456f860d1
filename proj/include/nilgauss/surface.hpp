#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "nilgauss/algebra.hpp"
#include "nilgauss/expression.hpp"
#include "nilgauss/group_model.hpp"

namespace nilgauss {

// Axis-aligned parameter box.
struct Box {
  std::vector<std::pair<double, double>> bounds;

  int dim() const { return static_cast<int>(bounds.size()); }
  bool contains(const Eigen::VectorXd& u, double margin = 0.0) const;
  Eigen::VectorXd center() const;
};

// Central finite differences with Richardson extrapolation over steps
// h, h/2, ..., h/2^(levels-1).
struct FdOptions {
  double base_step = 1e-4;
  int levels = 2;
};

// Value, Jacobian (dim x n) and Hessians (one n x n matrix per ambient
// coordinate) of a chart at a parameter point.
struct ChartJet {
  Eigen::VectorXd value;
  Eigen::MatrixXd first;
  std::vector<Eigen::MatrixXd> second;
};

// Parametric immersion u in R^n -> N given by one expression per model
// coordinate.
class SurfaceChart {
 public:
  SurfaceChart(std::shared_ptr<const CoordinateModel> model, std::vector<ExpressionTree> coords,
               Box domain, int orientation = 1, std::string name = "chart");

  const CoordinateModel& model() const { return *model_; }
  std::shared_ptr<const CoordinateModel> model_ptr() const { return model_; }
  const NilpotentAlgebra& algebra() const { return model_->algebra(); }
  int param_dim() const { return model_->dim() - 1; }
  int orientation() const { return orientation_; }
  const Box& domain() const { return domain_; }
  const std::string& name() const { return name_; }
  const std::vector<ExpressionTree>& coords() const { return coords_; }

  SurfaceChart with_orientation(int sign) const;
  SurfaceChart with_domain(Box domain) const;

  Eigen::VectorXd point(const Eigen::VectorXd& u) const;
  ChartJet jet(const Eigen::VectorXd& u, bool with_second = true) const;

 private:
  void check_param(const Eigen::VectorXd& u) const;

  std::shared_ptr<const CoordinateModel> model_;
  std::vector<ExpressionTree> coords_;
  Box domain_;
  int orientation_;
  std::string name_;
};

inline constexpr double kImmersionRankTol = 1e-8;

// Unit normal pulled back to the algebra by the inverse left translation.
// With orientation +1, det[T_1 .. T_n, G] > 0 for the algebra tangents T_a.
AlgebraVector gauss_map(const SurfaceChart& chart, const Eigen::VectorXd& u);

// Chart tangents expressed in the algebra basis (columns).
Eigen::MatrixXd algebra_tangents(const SurfaceChart& chart, const Eigen::VectorXd& u);

Eigen::MatrixXd induced_metric(const SurfaceChart& chart, const Eigen::VectorXd& u);

// Second fundamental form in chart coordinates, II_ab = <nabla_{r_a} r_b, eta>,
// via the ambient coordinate Christoffel symbols.
Eigen::MatrixXd second_fundamental_form(const SurfaceChart& chart, const Eigen::VectorXd& u);

// Frame-free mean curvature (1/n) tr(g^{-1} II).
double mean_curvature(const SurfaceChart& chart, const Eigen::VectorXd& u);

// Chart-coordinate direction w with d r(w) = the tangent algebra vector y.
// Throws WrongFrame if y is not tangent within 1e-8.
Eigen::VectorXd chart_direction(const SurfaceChart& chart, const Eigen::VectorXd& u,
                                const AlgebraVector& y);

enum class FrameKind { Generic, Heisenberg };

struct FrameOptions {
  // Heisenberg special basis when the algebra has a 1-dim center and is of
  // Heisenberg type, unless forced.
  std::optional<FrameKind> kind;
  // Completes the free directions from seeded random vectors instead of the
  // basis vectors in index order.
  std::optional<std::uint64_t> completion_seed;
  double degenerate_tol = 1e-12;
};

// Orthonormal frame Y_1..Y_{n+1} adapted to the normal eta = X_{n+1} + Z_{n+1}:
// Y_i = X_i in V for i < q, Y_q = X_q - Z_q, Y_i = Z_i in Z for q < i <= n,
// Y_{n+1} = eta, with X_{n+1} = lambda X_q, Z_{n+1} = mu Z_q, |X_q| = |Z_{n+1}|,
// |Z_q| = |X_{n+1}|. Accessors use the 1-based indices of that construction.
struct AdaptedFrame {
  FrameKind kind = FrameKind::Generic;
  int q = 0;
  int n = 0;
  std::vector<AlgebraVector> ys;  // Y_1..Y_{n+1}
  std::vector<AlgebraVector> xs;  // X_1..X_q
  std::vector<AlgebraVector> zs;  // Z_q..Z_n
  AlgebraVector x_normal;         // X_{n+1}
  AlgebraVector z_normal;         // Z_{n+1}
  AlgebraVector x_hat;            // unit direction of X_q and X_{n+1}
  AlgebraVector z_hat;            // unit direction of Z_q and Z_{n+1}
  double lambda = 0.0;
  double mu = 0.0;

  const AlgebraVector& y(int k) const { return ys.at(k - 1); }
  const AlgebraVector& x(int k) const { return k == n + 1 ? x_normal : xs.at(k - 1); }
  const AlgebraVector& z(int k) const { return k == n + 1 ? z_normal : zs.at(k - q); }
  const AlgebraVector& normal() const { return ys.back(); }
  double x_norm() const { return x_normal.norm(); }  // |X_{n+1}|
  double z_norm() const { return z_normal.norm(); }  // |Z_{n+1}|

  Eigen::MatrixXd matrix() const;  // columns Y_1..Y_{n+1}
  double gram_residual() const;
};

AdaptedFrame adapted_frame(const NilpotentAlgebra& alg, const AlgebraVector& normal,
                           const FrameOptions& options = {});

// Tangent directions of the hypersurface lying in the center.
std::vector<AlgebraVector> central_tangents(const AdaptedFrame& frame, double tol = 1e-10);

// b_ij in the adapted frame, with H = (1/n) sum b_ii and |B|^2 = sum b_ij^2.
struct ShapeData {
  Eigen::MatrixXd b;
  double H = 0.0;
  double norm_b2 = 0.0;
  double symmetry_defect = 0.0;
};

ShapeData shape_data(const SurfaceChart& chart, const Eigen::VectorXd& u,
                     const AdaptedFrame& frame);

using ScalarField = std::function<double(const Eigen::VectorXd&)>;
using VectorField = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

// Derivative of a scalar field along the tangent frame vector y (an algebra
// vector tangent at u). Throws BoundaryProximity if the stencil leaves the
// domain.
double frame_directional_derivative(const SurfaceChart& chart, const Eigen::VectorXd& u,
                                    const ScalarField& field, const AlgebraVector& y,
                                    const FdOptions& fd = {});

// Derivative of a field along a chart-coordinate direction w (not
// normalized: linear in w).
Eigen::VectorXd chart_directional_derivative(const Box& domain, const Eigen::VectorXd& u,
                                             const VectorField& field,
                                             const Eigen::VectorXd& w, const FdOptions& fd);

// Laplace-Beltrami operator of the induced metric applied componentwise:
// (1/sqrt g) d_i (sqrt g g^ij d_j f), all derivatives by Richardson-
// extrapolated central differences in chart coordinates.
Eigen::VectorXd laplace_beltrami(const SurfaceChart& chart, const Eigen::VectorXd& u,
                                 const VectorField& field, const FdOptions& fd = {});

// Everything the closed-form Laplacians need at one surface point.
struct PointSample {
  Eigen::VectorXd u;
  AlgebraVector gauss;
  AdaptedFrame frame;
  ShapeData shape;
  std::vector<double> dH;  // Y_k(nH), k = 1..n
};

PointSample sample_point(const SurfaceChart& chart, const Eigen::VectorXd& u,
                         const FrameOptions& frame_options = {}, const FdOptions& fd = {});

}  // namespace nilgauss
