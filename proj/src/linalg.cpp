#include "carent/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include "carent/error.hpp"

namespace carent {

Matrix hermitize(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

SpectralData eigh(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitize(m));
  if (solver.info() != Eigen::Success) throw Error("Hermitian eigen-decomposition failed");
  // Eigen returns ascending order
  SpectralData out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

std::vector<std::pair<double, int>> SpectralData::multiplicities(double tol) const {
  std::vector<std::pair<double, int>> out;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    if (!out.empty() && std::abs(out.back().first - eigenvalues[k]) <= tol)
      ++out.back().second;
    else
      out.emplace_back(eigenvalues[k], 1);
  }
  return out;
}

double shannon_nats(const RealVector& probabilities) {
  double s = 0;
  for (double p : probabilities) {
    if (p < -kNegativeTolerance) throw NotAStateError("negative eigenvalue " + std::to_string(p));
    if (p <= kEigenFloor) continue;
    s -= p * std::log(p);
  }
  return s;
}

Matrix psd_sqrt(const Matrix& m) {
  const auto sd = eigh(m);
  RealVector roots = sd.eigenvalues.unaryExpr([](double v) { return v > 0 ? std::sqrt(v) : 0.0; });
  return sd.eigenvectors * roots.asDiagonal() * sd.eigenvectors.adjoint();
}

double trace_norm(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

Matrix haar_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix g(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) g(r, c) = Complex(normal(rng), normal(rng));
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
  const Matrix& rr = qr.matrixQR();
  // fix the phases of diag(R) so that the distribution is Haar
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Complex d = rr(k, k);
    const double a = std::abs(d);
    if (a > 0) q.col(k) *= d / a;
  }
  return q;
}

std::vector<double> nonzero_spectrum(const Matrix& m, double tol) {
  const auto sd = eigh(m);
  std::vector<double> out;
  for (double v : sd.eigenvalues)
    if (v > tol) out.push_back(v);
  return out;
}

}  // namespace carent
