#pragma once

#include <random>
#include <utility>
#include <vector>

#include "carent/pauli.hpp"

namespace carent {

/// Eigen-decomposition of a Hermitian matrix, eigenvalues descending.
struct SpectralData {
  RealVector eigenvalues;
  Matrix eigenvectors;  // column k pairs with eigenvalues[k]

  /// Distinct eigenvalues (within tol) with their multiplicities, descending.
  std::vector<std::pair<double, int>> multiplicities(double tol = 1e-9) const;
};

// Eigenvalues below this magnitude are clamped to zero before taking logs.
inline constexpr double kEigenFloor = 1e-12;
// Eigenvalues below this are not a state.
inline constexpr double kNegativeTolerance = 1e-8;

Matrix hermitize(const Matrix& m);
SpectralData eigh(const Matrix& m);

/// -sum p ln p with 0 ln 0 = 0; throws NotAStateError below -kNegativeTolerance.
double shannon_nats(const RealVector& probabilities);

/// Square root of a positive semidefinite matrix, clamping tiny negative modes.
Matrix psd_sqrt(const Matrix& m);

/// Sum of singular values.
double trace_norm(const Matrix& m);

/// Haar-distributed unitary via QR of a complex Ginibre matrix.
Matrix haar_unitary(Eigen::Index dim, std::mt19937_64& rng);

/// Sorted nonzero spectrum (descending) of a Hermitian matrix.
std::vector<double> nonzero_spectrum(const Matrix& m, double tol = 1e-12);

}  // namespace carent
