#pragma once

#include <cstdint>
#include <memory>

#include "carent/car_algebra.hpp"
#include "carent/linalg.hpp"

namespace carent {

// Region embeddings. Both maps use the natural isomorphism M_{2^|sub|} = A_sub
// carried by the ordered Majorana monomials, and both preserve the normalized
// trace. Operators on a region are always written in that region's own
// coordinates (sites relabelled 1..|region| in lattice order).

/// A_sub (own coordinates) -> A_super (super's coordinates); sub must lie in super.
Matrix embed_operator(const Matrix& op, const Region& sub, const Region& super);
/// E_sub applied to an operator of A_super, returned in sub's coordinates.
Matrix project_operator(const Matrix& op, const Region& super, const Region& sub);

/// A state of the local algebra A_R. Stores the region-intrinsic density
/// rho (2^|R| x 2^|R|, trace 1); its global form is the element G = 2^|R| rho
/// of A_R with phi(A) = tau(G A), tau the normalized trace on all 2^n levels.
/// States are immutable values and cheap to copy.
class State {
 public:
  /// rho in the region's own coordinates. Re-Hermitized; must have unit trace
  /// and eigenvalues >= -1e-10.
  static State from_local(ContextPtr ctx, Region region, const Matrix& rho);
  /// G in A_R on the full space; must lie in A_R to 1e-10.
  static State from_global(ContextPtr ctx, Region region, const Matrix& global);
  static State tracial(ContextPtr ctx, Region region);
  /// Vector state of a unit vector in the region's own coordinates.
  static State vector_state(ContextPtr ctx, Region region, const Vector& psi);

  const ContextPtr& context() const { return data_->ctx; }
  const Region& region() const { return data_->region; }
  const Matrix& local() const { return data_->rho; }
  const SpectralData& spectrum() const { return data_->spectrum; }
  Eigen::Index local_dim() const { return data_->rho.rows(); }

  /// G = 2^|R| rho embedded into the full 2^n space.
  Matrix global() const;
  /// phi(A) for A given in the region's own coordinates.
  Complex expect_local(const Matrix& a) const { return (data_->rho * a).trace(); }
  /// phi(A) for A in A_R on the full space.
  Complex expect(const Matrix& a_global) const;

 private:
  struct Data {
    ContextPtr ctx;
    Region region;
    Matrix rho;
    SpectralData spectrum;
  };
  explicit State(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

/// Relative entropy result; `infinite` flags a support violation.
struct RelativeEntropy {
  double value = 0;
  bool infinite = false;
};

double entropy(const State& s);
State restrict(const State& s, const Region& sub);
/// phi Theta, density v rho v.
State theta_state(const State& s);
bool is_even(const State& s, double tol = 1e-10);
/// Operator-norm distance between the intrinsic densities.
double density_distance(const State& a, const State& b);
/// lambda a + (1 - lambda) b.
State mix(double lambda, const State& a, const State& b);

/// Uhlmann transition probability (Tr|sqrt(rho) sqrt(sigma)|)^2.
double transition_probability(const State& phi, const State& psi);
/// P(phi, phi Theta)^{1/2}.
double p_theta(const State& phi);
RelativeEntropy relative_entropy(const State& omega, const State& sigma);

/// Reproducible random density of the given rank. With `even` set the density
/// is block diagonal in the parity sectors of v_I.
State random_state(ContextPtr ctx, const Region& region, bool even, int rank, std::uint64_t seed);

/// The product state phi(AB) = a(A) b(B) on A_{I u J}; needs disjoint regions
/// and at least one even factor.
State product_extension(const State& a, const State& b);

/// Diagonal parity signs (-1)^{popcount(b)} of v in a register's own coordinates,
/// up to the overall sign (-1)^sites which cancels under conjugation.
std::vector<double> local_parity_signs(int sites);
Matrix theta_local(const Matrix& m);

}  // namespace carent
