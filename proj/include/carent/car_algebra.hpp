#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "carent/pauli.hpp"
#include "carent/region.hpp"

namespace carent {

inline constexpr int kMaxSites = 12;

/// Concrete Jordan-Wigner realization of the CAR algebra on sites 1..n:
/// a_i = Z x ... x Z x a x 1 x ... x 1 with a the 2x2 lowering matrix.
/// Immutable after construction; share it through ContextPtr.
class AlgebraContext {
 public:
  explicit AlgebraContext(int sites);

  int sites() const { return sites_; }
  Eigen::Index dim() const { return Eigen::Index{1} << sites_; }
  Region lattice() const { return Region::range(1, sites_); }

  /// Throws ArgumentError unless every site of `r` lies in 1..n.
  void check_region(const Region& r) const;

  /// Majoranas c_{2i-1} = a_i + a_i^dag (which 0) and c_{2i} = i(a_i^dag - a_i) (which 1).
  PauliString majorana(int site, int which) const;
  Matrix annihilator(int site) const;
  Matrix creator(int site) const;

  /// Ordered Majorana monomials of A_I in the global representation.
  std::vector<PauliString> monomials(const Region& region) const;
  PauliString parity(const Region& region) const;

  /// Diagonal of v_Lambda; theta(X)(r,c) = sign(r) sign(c) X(r,c).
  const std::vector<double>& lattice_parity_signs() const { return parity_signs_; }

 private:
  int sites_;
  std::vector<double> parity_signs_;
};

using ContextPtr = std::shared_ptr<const AlgebraContext>;

ContextPtr build_context(int sites);

/// An operator on the full 2^n space together with the region it belongs to.
struct OperatorElement {
  Matrix matrix;
  Region region;
  std::string note;  // set for degenerate inputs, e.g. v over the empty region
};

OperatorElement parity_unitary(const AlgebraContext& ctx, const Region& region);
OperatorElement theta(const AlgebraContext& ctx, const OperatorElement& x);
Matrix theta(const AlgebraContext& ctx, const Matrix& x);

/// (X_+, X_-) with X_+- = (X +- theta(X)) / 2.
std::pair<OperatorElement, OperatorElement> grade_split(const AlgebraContext& ctx,
                                                        const OperatorElement& x);

/// Dense monomial basis of A_I; 4^|I| tau-orthonormal elements of definite parity.
std::vector<OperatorElement> monomial_basis(const AlgebraContext& ctx, const Region& region);

/// tau-orthogonal projection onto A_I (the tracial conditional expectation E_I).
Matrix conditional_expectation(const AlgebraContext& ctx, const Region& region, const Matrix& x);

/// Relative Frobenius residual of x after projection onto A_{x.region}.
double membership_residual(const AlgebraContext& ctx, const OperatorElement& x);
bool is_member(const AlgebraContext& ctx, const OperatorElement& x, double tol = 1e-10);

/// Largest entrywise deviation from the CAR over all generator pairs.
double car_residual(const AlgebraContext& ctx);

struct CommutantReport {
  Region I, J;
  int candidate_dimension = 0;       // rank of span(A_J+ u v_I A_J-)
  int commutant_dimension = 0;       // dim(A_I' cap A_{I u J}), counted independently
  int expected_dimension = 0;        // 4^|J|
  double max_commutator = 0;         // max ||[c, g]|| over candidates c and generators g of A_I
  double max_span_residual = 0;      // candidates outside the commutant span
  int commutant_in_J_dimension = 0;  // dim(A_I' cap A_J)
  bool commutant_in_J_is_even = false;
  bool passed = false;
};

/// Verifies the relative-commutant identities for disjoint I, J.
CommutantReport relative_commutant_check(const AlgebraContext& ctx, const Region& I,
                                         const Region& J);

}  // namespace carent
