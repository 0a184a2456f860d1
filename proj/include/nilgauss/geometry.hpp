#pragma once

#include <vector>

#include "nilgauss/algebra.hpp"

namespace nilgauss {

// Levi-Civita connection of the left-invariant metric on left-invariant
// fields, extended bilinearly over the V/Z splits:
//   nabla_X Y = 1/2 [X, Y],  nabla_X Z = nabla_Z X = -1/2 J(Z) X,  nabla_Z Z' = 0.
AlgebraVector connection(const NilpotentAlgebra& alg, const AlgebraVector& a,
                         const AlgebraVector& b);

// Curvature tensor R(x, y) w from the closed-form case table (V/Z blocks),
// extended trilinearly.
AlgebraVector curvature(const NilpotentAlgebra& alg, const AlgebraVector& x,
                        const AlgebraVector& y, const AlgebraVector& w);

// R(x, y) w = nabla_x nabla_y w - nabla_y nabla_x w - nabla_[x,y] w, evaluated
// on left-invariant fields by composing `connection` and `bracket`.
AlgebraVector curvature_oracle(const NilpotentAlgebra& alg, const AlgebraVector& x,
                               const AlgebraVector& y, const AlgebraVector& w);

// Ricci tensor: 1/2 sum_k <J(Z_k)^2 X, Y> on V, 0 on V x Z,
// -1/4 Tr(J(Z) J(Z')) on Z.
double ricci(const NilpotentAlgebra& alg, const AlgebraVector& a, const AlgebraVector& b);

// |sum_i <J([x, X_i]) X_i, y> - 2 Ric(x, y)| for a family {X_i} in V with
// sum_i X_i X_i^T = Id_V (an orthonormal basis of V, or the adapted family
// X_1..X_q, X_{n+1}). Throws NotInSubspace if the family is not such a frame.
double ricci_identity_check(const NilpotentAlgebra& alg, const AlgebraVector& x,
                            const AlgebraVector& y, const std::vector<AlgebraVector>& frame,
                            double tol = 1e-10);

}  // namespace nilgauss
