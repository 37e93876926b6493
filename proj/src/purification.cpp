#include "carent/purification.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/SVD>

#include "carent/error.hpp"

namespace carent {

namespace {

Vector apply_pauli(const PauliString& p, const Vector& v) {
  Vector out = Vector::Zero(v.size());
  for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(v.size()); ++b)
    if (v[b] != Complex{}) out[p.target(b)] += p.factor(b) * v[b];
  return out;
}

// a^dag = (c1 - i c2) / 2
Vector create(int sites, int position, const Vector& v) {
  return 0.5 * (apply_pauli(majorana(sites, position, 0), v) -
                Complex(0, 1) * apply_pauli(majorana(sites, position, 1), v));
}

void fix_global_phase(Vector& v) {
  Eigen::Index arg = 0;
  v.cwiseAbs().maxCoeff(&arg);
  const Complex c = v[arg];
  if (std::abs(c) > 0) v *= std::conj(c) / std::abs(c);
}

void check_partner_region(const State& rho1, const Region& J) {
  rho1.context()->check_region(J);
  if (!rho1.region().disjoint(J))
    throw ArgumentError("partner region " + J.to_string() + " overlaps " + rho1.region().to_string());
}

struct Eigenpair {
  double value;
  Vector vec;
  int parity;  // eigenvalue of v_I, +1 or -1
};

State state_from_split_vector(const State& rho1, const Region& J, const Vector& xi) {
  const Region joint = rho1.region().unite(J);
  Vector psi = commutant_split_basis(rho1.region(), J) * xi;
  psi.normalize();
  fix_global_phase(psi);
  return State::vector_state(rho1.context(), joint, psi);
}

}  // namespace

Vector SchmidtDecomposition::reconstruct() const {
  const Eigen::Index d1 = left.rows(), d2 = right.rows();
  Vector out = Vector::Zero(d1 * d2);
  for (Eigen::Index k = 0; k < lambdas.size(); ++k)
    for (Eigen::Index i = 0; i < d1; ++i)
      for (Eigen::Index j = 0; j < d2; ++j) out[i * d2 + j] += lambdas[k] * left(i, k) * right(j, k);
  return out;
}

SchmidtDecomposition schmidt(const Vector& xi, Eigen::Index d1, Eigen::Index d2) {
  if (d1 < 1 || d2 < 1 || xi.size() != d1 * d2)
    throw ArgumentError("vector length does not match the split dimensions");
  if (std::abs(xi.norm() - 1.0) > 1e-10) throw ArgumentError("Schmidt decomposition needs a unit vector");
  // row i holds the coefficients xi(i, .)
  Matrix m(d1, d2);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d2; ++j) m(i, j) = xi[i * d2 + j];
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv[r] > 1e-10) ++r;
  SchmidtDecomposition out;
  out.lambdas = sv.head(r);
  out.left = svd.matrixU().leftCols(r);
  // m = U S V^dag, so the second-factor vectors are conj(V)
  out.right = svd.matrixV().leftCols(r).conjugate();
  return out;
}

Matrix commutant_split_basis(const Region& I, const Region& J) {
  if (!I.disjoint(J)) throw ArgumentError("split basis needs disjoint regions");
  const Region joint = I.unite(J);
  const int m = joint.size();
  const auto pI = joint.positions_of(I);
  const auto pJ = joint.positions_of(J);
  const PauliString vI = parity_string(m, pI);
  const Eigen::Index dimI = Eigen::Index{1} << I.size();
  const Eigen::Index dimJ = Eigen::Index{1} << J.size();

  Matrix w(dimI * dimJ, dimI * dimJ);
  for (Eigen::Index s = 0; s < dimI; ++s) {
    for (Eigen::Index t = 0; t < dimJ; ++t) {
      Vector v = Vector::Zero(dimI * dimJ);
      v[0] = 1;
      // rightmost factors act first
      for (int k = J.size(); k >= 1; --k) {
        if (!((t >> (J.size() - k)) & 1)) continue;
        v = create(m, pJ[k - 1], apply_pauli(vI, v));  // (v_I a_j)^dag = a_j^dag v_I
      }
      for (int k = I.size(); k >= 1; --k) {
        if (!((s >> (I.size() - k)) & 1)) continue;
        v = create(m, pI[k - 1], v);
      }
      w.col(s * dimJ + t) = v;
    }
  }
  return w;
}

State pure_extension(const State& rho1, const Region& J) {
  check_partner_region(rho1, J);
  const auto& sd = rho1.spectrum();
  const Eigen::Index dimJ = Eigen::Index{1} << J.size();
  const Eigen::Index dimI = rho1.local_dim();
  Eigen::Index rank = 0;
  while (rank < sd.eigenvalues.size() && sd.eigenvalues[rank] > kEigenFloor) ++rank;
  if (rank > dimJ)
    throw CapacityError("rank " + std::to_string(rank) + " exceeds partner dimension " +
                        std::to_string(dimJ));
  Vector xi = Vector::Zero(dimI * dimJ);
  for (Eigen::Index k = 0; k < rank; ++k) {
    const double amp = std::sqrt(sd.eigenvalues[k]);
    for (Eigen::Index s = 0; s < dimI; ++s) xi[s * dimJ + k] += amp * sd.eigenvectors(s, k);
  }
  return state_from_split_vector(rho1, J, xi);
}

Vector symmetric_purification_vector(const State& rho1, const Region& J) {
  check_partner_region(rho1, J);
  if (!is_even(rho1)) throw PreconditionError("symmetric purification needs an even state");
  const int nI = rho1.region().size();
  const int nJ = J.size();
  const Eigen::Index dimI = rho1.local_dim();
  const Eigen::Index dimJ = Eigen::Index{1} << nJ;
  const Matrix& rho = rho1.local();

  // rho commutes with v_I, so it is block diagonal in the popcount-parity sectors
  std::vector<Eigenpair> pairs;
  for (int q = 0; q < 2; ++q) {
    std::vector<Eigen::Index> idx;
    for (Eigen::Index b = 0; b < dimI; ++b)
      if ((std::popcount(static_cast<std::uint32_t>(b)) & 1) == q) idx.push_back(b);
    if (idx.empty()) continue;
    Matrix block(idx.size(), idx.size());
    for (std::size_t c = 0; c < idx.size(); ++c)
      for (std::size_t r = 0; r < idx.size(); ++r) block(r, c) = rho(idx[r], idx[c]);
    const auto sd = eigh(block);
    const int parity = ((nI - q) % 2 == 0) ? 1 : -1;  // v = prod(-Z)
    for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
      if (sd.eigenvalues[k] <= kEigenFloor) continue;
      Vector v = Vector::Zero(dimI);
      for (std::size_t r = 0; r < idx.size(); ++r) v[idx[r]] = sd.eigenvectors(r, k);
      pairs.push_back({sd.eigenvalues[k], std::move(v), parity});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(), [](const Eigenpair& a, const Eigenpair& b) {
    if (std::abs(a.value - b.value) > 1e-12) return a.value > b.value;
    return a.parity > b.parity;
  });

  // partner vectors: computational states of J grouped by v_J eigenvalue, in index order
  std::vector<Eigen::Index> partners[2];  // [0] for +1, [1] for -1
  for (Eigen::Index t = 0; t < dimJ; ++t) {
    const int q = std::popcount(static_cast<std::uint32_t>(t)) & 1;
    partners[((nJ - q) % 2 == 0) ? 0 : 1].push_back(t);
  }
  std::size_t used[2] = {0, 0};

  Vector xi = Vector::Zero(dimI * dimJ);
  for (const auto& p : pairs) {
    const int slot = p.parity > 0 ? 0 : 1;
    if (used[slot] >= partners[slot].size())
      throw CapacityError("no partner vector of matching parity left in " + J.to_string());
    const Eigen::Index t = partners[slot][used[slot]++];
    const double amp = std::sqrt(p.value);
    for (Eigen::Index s = 0; s < dimI; ++s) xi[s * dimJ + t] += amp * p.vec[s];
  }
  Vector psi = commutant_split_basis(rho1.region(), J) * xi;
  psi.normalize();
  fix_global_phase(psi);
  return psi;
}

State symmetric_purification(const State& rho1, const Region& J) {
  const Vector psi = symmetric_purification_vector(rho1, J);
  return State::vector_state(rho1.context(), rho1.region().unite(J), psi);
}

}  // namespace carent
