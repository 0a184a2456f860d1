#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "nilgauss/surface.hpp"

namespace nilgauss {

enum class Method { General, HType, Heisenberg, NumericOracle };

const char* to_string(Method method);
Method method_from_string(const std::string& name);  // throws Config

// One named contribution to every coefficient of Delta G.
struct LaplacianTerm {
  std::string name;
  Eigen::VectorXd values;
};

// Delta G(p) = sum_k coeffs(k-1) Y_k(e), k = 1..n+1.
struct LaplacianReport {
  Method method = Method::General;
  Eigen::VectorXd coeffs;
  std::vector<LaplacianTerm> terms;
  double tangential_norm = 0.0;
  double normal_coeff = 0.0;

  // Sums the terms into coeffs and fills the derived norms.
  void finalize();
};

struct HarmonicityVerdict {
  double defect = 0.0;
  bool harmonic = true;
  double energy_coeff = 0.0;
};

// Closed form for any metric 2-step nilpotent algebra; dH holds Y_k(nH) for
// k = 1..n.
LaplacianReport laplacian_general(const NilpotentAlgebra& alg, const AdaptedFrame& frame,
                                  const ShapeData& shape, const std::vector<double>& dH);

// Heisenberg-type simplification. Throws WrongAlgebra otherwise.
LaplacianReport laplacian_h_type(const NilpotentAlgebra& alg, const AdaptedFrame& frame,
                                 const ShapeData& shape, const std::vector<double>& dH);

// Heisenberg group H^{2m+1} in the special J-basis. Throws WrongAlgebra or
// WrongFrame.
LaplacianReport laplacian_heisenberg(const NilpotentAlgebra& alg, const AdaptedFrame& frame,
                                     const ShapeData& shape, const std::vector<double>& dH);

LaplacianReport laplacian_closed_form(Method method, const NilpotentAlgebra& alg,
                                      const PointSample& sample);

// Laplace-Beltrami of the Gauss map components, projected on the frame.
LaplacianReport laplacian_numeric(const SurfaceChart& chart, const Eigen::VectorXd& u,
                                  const AdaptedFrame& frame, const FdOptions& fd = {});

HarmonicityVerdict harmonicity(const LaplacianReport& report, double tol = 1e-3);

}  // namespace nilgauss
