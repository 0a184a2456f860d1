#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace nilgauss {

// Coordinates in the fixed orthonormal basis of the algebra. The complement
// V occupies indices [0, dim_v) and the center Z occupies [dim_v, dim_total).
using AlgebraVector = Eigen::VectorXd;

struct BracketEntry {
  int i;  // 1-based, i < j
  int j;
  int k;
  double c;
};

// Metric 2-step nilpotent Lie algebra in an orthonormal basis, with the
// center on the trailing indices. Structure constants are stored dense:
// [e_i, e_j] = sum_k c(i, j, k) e_k.
class NilpotentAlgebra {
 public:
  // Takes the dense tensor as given (row-major i, j, k); no validation.
  NilpotentAlgebra(int dim_total, int dim_center, std::vector<double> tensor);

  // Builds from i < j entries and mirrors them antisymmetrically.
  static NilpotentAlgebra from_brackets(int dim_total, int dim_center,
                                        const std::vector<BracketEntry>& entries);

  int dim_total() const { return dim_total_; }
  int dim_center() const { return dim_center_; }
  int dim_v() const { return dim_total_ - dim_center_; }

  double c(int i, int j, int k) const {
    return tensor_[(static_cast<std::size_t>(i) * dim_total_ + j) * dim_total_ + k];
  }

  AlgebraVector basis(int index) const;
  AlgebraVector zero() const { return AlgebraVector::Zero(dim_total_); }
  AlgebraVector v_part(const AlgebraVector& x) const;
  AlgebraVector z_part(const AlgebraVector& x) const;

  AlgebraVector bracket(const AlgebraVector& x, const AlgebraVector& y) const;

  // J(z)x, defined by <J(z)x, y> = <[x, y], z>. Requires z in Z and x in V
  // up to `tol`; throws NotInSubspace otherwise.
  AlgebraVector j_apply(const AlgebraVector& z, const AlgebraVector& x,
                        double tol = 1e-10) const;

  // Same contraction without the subspace checks. Components of z outside Z
  // and of x outside V contribute nothing.
  AlgebraVector j_raw(const AlgebraVector& z, const AlgebraVector& x) const;

  // J(z) as a dim_v x dim_v matrix acting on V coordinates.
  Eigen::MatrixXd j_matrix(const AlgebraVector& z) const;

  const std::vector<double>& tensor() const { return tensor_; }

 private:
  void check_length(const AlgebraVector& x, const char* what) const;

  int dim_total_;
  int dim_center_;
  std::vector<double> tensor_;
};

struct Violation {
  std::string invariant;
  double magnitude;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& invariant) const;
};

inline constexpr const char* kAntisymmetry = "antisymmetry";
inline constexpr const char* kBracketInCenter = "bracket lands in center";
inline constexpr const char* kCenterCentral = "center is central";
inline constexpr const char* kNonAbelian = "non-abelian";
inline constexpr const char* kTrueCenter = "declared center is the true center";

ValidationReport validate(const NilpotentAlgebra& alg, double tol = 1e-10);

bool is_heisenberg_type(const NilpotentAlgebra& alg, double tol = 1e-10);

// Basis order K_1..K_m, L_1..L_m, Z with [K_i, L_j] = delta_ij Z.
NilpotentAlgebra heisenberg(int m);

// Quaternionic Heisenberg algebra: V = H (dim 4), Z = Im H (dim 3),
// J(Z_a) is left multiplication by i, j, k.
NilpotentAlgebra quaternionic_heisenberg();

// Heisenberg(m) plus `extra` abelian directions appended to V.
NilpotentAlgebra heisenberg_plus_abelian(int m, int extra);

// {"dim_total", "dim_center", "brackets": [{"i","j","k","c"}...]}, or a
// built-in name such as "heisenberg:2", "quaternionic", or
// {"builtin": "heisenberg", "m": 2}.
NilpotentAlgebra algebra_from_json(const nlohmann::json& doc);
nlohmann::json algebra_to_json(const NilpotentAlgebra& alg);
nlohmann::json to_json(const ValidationReport& report);

}  // namespace nilgauss
