#pragma once

#include <bit>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace carent {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// i^phase * X^x Z^z on a register of qubits. In an m-site context the site at
/// 1-based position p owns bit (m - p) of the basis index, so position 1 is the
/// most significant tensor factor.
struct PauliString {
  std::uint32_t x = 0;
  std::uint32_t z = 0;
  std::uint8_t phase = 0;  // power of i, mod 4

  Complex coefficient() const;
  PauliString adjoint() const;
  bool commutes_with(const PauliString& other) const {
    return ((std::popcount(x & other.z) + std::popcount(z & other.x)) & 1) == 0;
  }

  /// Column action: P|b> = factor * |target>.
  std::uint32_t target(std::uint32_t b) const { return b ^ x; }
  Complex factor(std::uint32_t b) const;

  bool operator==(const PauliString&) const = default;
};

PauliString operator*(const PauliString& a, const PauliString& b);

Matrix to_dense(const PauliString& p, int sites);

/// Jordan-Wigner Majorana at 1-based `position` of an m-site register.
/// which == 0 gives a + a^dag, which == 1 gives i(a^dag - a).
PauliString majorana(int sites, int position, int which);

/// Ordered Majorana monomials for the listed positions. Entry S is the product
/// of Majoranas j with bit j of S set, in increasing j, where j = 2*k + which
/// for the k-th listed position. Parity of entry S is popcount(S) mod 2, and
/// the same S in two contexts corresponds under the natural isomorphism.
std::vector<PauliString> majorana_monomials(int sites, std::span<const int> positions);

/// prod_{p} (a_p^dag a_p - a_p a_p^dag) over the listed positions.
PauliString parity_string(int sites, std::span<const int> positions);

inline bool monomial_is_even(std::size_t index) { return (std::popcount(index) & 1) == 0; }

}  // namespace carent
