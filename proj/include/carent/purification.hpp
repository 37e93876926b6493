#pragma once

#include "carent/states.hpp"

namespace carent {

/// xi = sum_k lambda_k left_k (x) right_k with lambda descending.
struct SchmidtDecomposition {
  RealVector lambdas;
  Matrix left;   // d1 x r, orthonormal columns
  Matrix right;  // d2 x r, orthonormal columns

  int rank() const { return static_cast<int>(lambdas.size()); }
  /// Reassembled vector, index i * d2 + j for factor indices (i, j).
  Vector reconstruct() const;
};

/// Schmidt decomposition of a unit vector on C^{d1} (x) C^{d2}; index i * d2 + j.
/// Coefficients below 1e-10 are dropped.
SchmidtDecomposition schmidt(const Vector& xi, Eigen::Index d1, Eigen::Index d2);

/// Orthonormal basis of the local space of I u J adapted to
/// A_{I u J} = A_I (x) (A_I' cap A_{I u J}). Column s * 2^|J| + t is
/// (prod_{i in I} (a_i^dag)^{s_i}) (prod_{j in J} (v_I a_j)^dag^{t_j}) |vacuum>.
/// Under this change of basis a_i (i in I) becomes a x 1 and v_I a_j becomes 1 x a.
Matrix commutant_split_basis(const Region& I, const Region& J);

/// A pure state on I u J restricting to rho1 on I, built in the split basis.
State pure_extension(const State& rho1, const Region& J);

/// For even rho1: an even pure state on I u J restricting to rho1 on I, whose
/// restriction to J carries the same nonzero spectrum.
State symmetric_purification(const State& rho1, const Region& J);

/// The purifying unit vector in I u J's own coordinates, before forming the state.
Vector symmetric_purification_vector(const State& rho1, const Region& J);

}  // namespace carent
