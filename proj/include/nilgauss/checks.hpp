#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nilgauss/laplacian.hpp"

namespace nilgauss {

// Residuals of the three conditions characterizing harmonic CMC
// hypersurfaces of H^{2m+1}, in the special J-basis.
struct Prop3Residuals {
  double off_diagonal = 0.0;  // max |b_{2m,k}|, k != m, 2m
  double second = 0.0;        // ||Z_{2m+1}| (|X_{2m+1}|^2 - 2 b_{2m,m})|
  double trace = 0.0;         // ||Z_{2m+1}| (b_11 + .. + b_{2m-1,2m-1} + 3 b_{2m,2m})|
  double max() const;
};

Prop3Residuals prop3_residuals(const ShapeData& shape, const AdaptedFrame& frame);

struct JacobiResult {
  double max_residual = 0.0;  // max |(Delta + Ric(eta,eta) + |B|^2) w|
  double min_w = 0.0;
};

// w = <G, v> on the given parameter points.
JacobiResult jacobi_check(const SurfaceChart& chart, const std::vector<Eigen::VectorXd>& points,
                          const Eigen::VectorXd& v, const FdOptions& fd = {});

struct Corollary1Result {
  bool skipped = false;
  std::string reason;
  double max_variation = 0.0;
  int curves = 0;
};

struct Corollary1Options {
  double harmonic_tol = 1e-3;
  double step = 0.02;
  int steps = 10;
  FdOptions fd;
};

// Follows curves tangent to the central directions of the surface from each
// point and reports the largest change in H. Skipped if the Gauss map is not
// harmonic at every point.
Corollary1Result corollary1_check(const SurfaceChart& chart,
                                  const std::vector<Eigen::VectorXd>& points,
                                  const Corollary1Options& options = {});

struct GaussCodazziResult {
  bool skipped = false;
  std::string reason;
  double codazzi_1 = 0.0;
  double codazzi_2 = 0.0;
  double gauss = 0.0;
  double curvature_ab = 0.0;  // <R(F_1, F_2) F_1, eta>
  double ab = 0.0;            // |X_3| |Z_3|
  double max_residual() const;
};

// Codazzi and Gauss equations of a surface in Nil in the frame F_1 = Y_1,
// F_2 = Y_2, eta = Y_3, with covariant derivatives of the frame and of b
// taken by finite differences.
GaussCodazziResult gauss_codazzi_residuals(const SurfaceChart& chart, const Eigen::VectorXd& u,
                                           const FdOptions& fd = {}, double degenerate_tol = 1e-6);

}  // namespace nilgauss
