#include <random>

#include "doctest.h"

#include "carent/kernels.hpp"
#include "carent/pauli.hpp"
#include "oracles.hpp"

using namespace carent;

namespace {

Matrix random_matrix(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix m(dim, dim);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = Complex(g(rng), g(rng));
  return m;
}

PauliString random_pauli(int sites, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::uint32_t> bits(0, (1u << sites) - 1);
  std::uniform_int_distribution<int> ph(0, 3);
  return {bits(rng), bits(rng), static_cast<std::uint8_t>(ph(rng))};
}

}  // namespace

TEST_CASE("Pauli product, adjoint and commutation agree with dense matrices") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 4;
    const auto p = random_pauli(n, rng), q = random_pauli(n, rng);
    const Matrix dp = to_dense(p, n), dq = to_dense(q, n);
    CHECK((to_dense(p * q, n) - dp * dq).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((to_dense(p.adjoint(), n) - dp.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    const bool dense_commute = (dp * dq - dq * dp).cwiseAbs().maxCoeff() < 1e-14;
    CHECK(p.commutes_with(q) == dense_commute);
  }
}

TEST_CASE("Jordan-Wigner Majoranas match Kronecker-product generators") {
  for (int n = 1; n <= 4; ++n)
    for (int site = 1; site <= n; ++site) {
      const Matrix a = oracle::jordan_wigner_annihilator(n, site);
      const Matrix c1 = to_dense(majorana(n, site, 0), n);
      const Matrix c2 = to_dense(majorana(n, site, 1), n);
      CHECK((c1 - (a + a.adjoint())).cwiseAbs().maxCoeff() < 1e-15);
      CHECK((c2 - Complex(0, 1) * (a.adjoint() - a)).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("parity string is the product of a^dag a - a a^dag") {
  const int n = 3;
  const std::vector<int> pos{1, 3};
  Matrix expected = Matrix::Identity(8, 8);
  for (int s : pos) {
    const Matrix a = oracle::jordan_wigner_annihilator(n, s);
    expected = expected * (a.adjoint() * a - a * a.adjoint());
  }
  CHECK((to_dense(parity_string(n, pos), n) - expected).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("serial and OpenMP kernels agree") {
  std::mt19937_64 rng(5);
  for (int n : {2, 4, 6}) {
    std::vector<int> pos;
    for (int p = 1; p <= n; ++p) pos.push_back(p);
    const auto basis = majorana_monomials(n, pos);
    const Matrix x = random_matrix(Eigen::Index{1} << n, rng);
    const auto cs = kernels::expand_serial(basis, x);
    const auto cp = kernels::expand_parallel(basis, x);
    double diff = 0;
    for (std::size_t k = 0; k < cs.size(); ++k) diff = std::max(diff, std::abs(cs[k] - cp[k]));
    CHECK(diff < 1e-14);
    const Matrix ms = kernels::assemble_serial(basis, cs, x.rows());
    const Matrix mp = kernels::assemble_parallel(basis, cs, x.rows());
    CHECK((ms - mp).cwiseAbs().maxCoeff() < 1e-13);
    // the full monomial basis spans everything
    CHECK((ms - x).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("tau_product equals the normalized trace of the dense product") {
  std::mt19937_64 rng(3);
  const int n = 3;
  for (int trial = 0; trial < 50; ++trial) {
    const auto p = random_pauli(n, rng);
    const Matrix x = random_matrix(8, rng);
    const Complex expected = (to_dense(p, n) * x).trace() / 8.0;
    CHECK(std::abs(kernels::tau_product(p, x) - expected) < 1e-13);
  }
}
