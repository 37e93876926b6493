#include "carent/counterexamples.hpp"

#include <cmath>

#include "carent/error.hpp"
#include "carent/kernels.hpp"

namespace carent {

namespace {

double scale_of(const Region& r) { return std::ldexp(1.0, r.size()); }

bool is_pure(const State& s) { return s.spectrum().eigenvalues[0] >= 1.0 - 1e-10; }

void require_mutually_disjoint(const Region& K, const Region& I, const Region& J) {
  if (!K.disjoint(I) || !K.disjoint(J) || !I.disjoint(J))
    throw ArgumentError("regions K=" + K.to_string() + ", I=" + I.to_string() + ", J=" + J.to_string() +
                        " must be mutually disjoint");
}

}  // namespace

State odd_eigenvector_state(const ContextPtr& ctx, const Region& K,
                            const std::optional<OperatorElement>& A) {
  ctx->check_region(K);
  if (K.empty()) throw ArgumentError("odd eigenvector state needs a nonempty region");
  const Eigen::Index dim = Eigen::Index{1} << K.size();

  if (!A) {
    const PauliString x = majorana(K.size(), 1, 0);
    Vector eta = Vector::Zero(dim);
    eta[0] += 1.0;                            // vacuum
    eta[x.target(0)] += x.factor(0) * 1.0;    // A |vacuum>
    eta /= std::sqrt(2.0);
    return State::vector_state(ctx, K, eta);
  }

  const Matrix& a = A->matrix;
  const double norm = a.norm();
  if (norm == 0) throw ArgumentError("operator is zero");
  if ((a - a.adjoint()).norm() > 1e-10 * norm) throw ArgumentError("operator is not self-adjoint");
  if (!is_member(*ctx, OperatorElement{a, K, {}}))
    throw ArgumentError("operator does not lie in A_" + K.to_string());
  const auto [even, odd] = grade_split(*ctx, OperatorElement{a, K, {}});
  if (even.matrix.norm() > 1e-10 * norm) throw ArgumentError("operator is not odd");

  const Matrix local = project_operator(a, ctx->lattice(), K);
  const auto sd = eigh(local);
  if (dim > 1 && sd.eigenvalues[0] - sd.eigenvalues[1] < 1e-8)
    throw ArgumentError("top eigenvalue of the operator is degenerate");
  return State::vector_state(ctx, K, sd.eigenvectors.col(0).normalized());
}

State symmetrize(const State& rho2_tilde) { return mix(0.5, rho2_tilde, theta_state(rho2_tilde)); }

OperatorElement u1_for(const AlgebraContext& ctx, const Region& K, const State& rho1) {
  if (rho1.region() != K) throw ArgumentError("rho1 does not live on " + K.to_string());
  if (!is_pure(rho1)) throw PreconditionError("u1 needs a pure state on K");
  return parity_unitary(ctx, K);
}

ExtensionRecipe make_recipe(const ContextPtr& ctx, const Region& K, const Region& I, const Region& J,
                            const std::optional<State>& rho2_tilde, const std::optional<State>& rhoJ) {
  require_mutually_disjoint(K, I, J);
  State rho1 = odd_eigenvector_state(ctx, K);
  State tilde = rho2_tilde ? *rho2_tilde : odd_eigenvector_state(ctx, I);
  if (tilde.region() != I) throw ArgumentError("rho2_tilde does not live on " + I.to_string());
  State j = rhoJ ? *rhoJ : State::tracial(ctx, J);
  if (j.region() != J) throw ArgumentError("rhoJ does not live on " + J.to_string());
  State rho2 = symmetrize(tilde);
  OperatorElement u1 = u1_for(*ctx, K, rho1);
  return {K, I, J, std::move(rho1), std::move(tilde), std::move(rho2), std::move(j), std::move(u1)};
}

void validate_recipe(const ExtensionRecipe& r) {
  require_mutually_disjoint(r.K, r.I, r.J);
  if (r.rho1.region() != r.K || r.rho2_tilde.region() != r.I || r.rho2.region() != r.I ||
      r.rhoJ.region() != r.J)
    throw PreconditionError("recipe states do not match their regions");
  if (p_theta(r.rho1) > 1e-8) throw PreconditionError("p_theta(rho1) > 1e-8");
  if (!is_pure(r.rho1)) throw PreconditionError("rho1 is not pure");
  if (!is_even(r.rho2)) throw PreconditionError("rho2 is not even");
  if (density_distance(r.rho2_tilde, theta_state(r.rho2_tilde)) <= 1e-6)
    throw PreconditionError("rho2_tilde coincides with its Theta image");
  if (density_distance(r.rho2, symmetrize(r.rho2_tilde)) > 1e-10)
    throw PreconditionError("rho2 is not the Theta-symmetrization of rho2_tilde");
  if (!is_even(r.rhoJ)) throw PreconditionError("rhoJ is not even");

  const auto& ctx = *r.rho1.context();
  const Matrix& u = r.u1.matrix;
  const Matrix id = Matrix::Identity(ctx.dim(), ctx.dim());
  if ((u * u - id).cwiseAbs().maxCoeff() > 1e-12 || (u - u.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw PreconditionError("u1 is not a self-adjoint unitary");
  for (int k : r.K.sites())
    for (int which = 0; which < 2; ++which) {
      const Matrix c = to_dense(ctx.majorana(k, which), ctx.sites());
      if ((u * c * u + c).cwiseAbs().maxCoeff() > 1e-12)
        throw PreconditionError("u1 does not implement Theta on A_K");
    }
}

State joint_extension(const ExtensionRecipe& r) {
  validate_recipe(r);
  const auto& ctx = r.rho1.context();
  const Region KI = r.K.unite(r.I);
  const int m = KI.size();
  const Eigen::Index dim = Eigen::Index{1} << m;

  const Matrix g1 = embed_operator(scale_of(r.K) * r.rho1.local(), r.K, KI);
  const Matrix g2 = embed_operator(scale_of(r.I) * r.rho2.local(), r.I, KI);
  const Matrix g2t = embed_operator(scale_of(r.I) * r.rho2_tilde.local(), r.I, KI);
  const Matrix u = project_operator(r.u1.matrix, ctx->lattice(), KI);
  const Matrix ug1 = u * g1;

  const auto mk = majorana_monomials(m, KI.positions_of(r.K));
  const auto mi = majorana_monomials(m, KI.positions_of(r.I));

  // rho1(A1), rho1(A1 u1), rho2(A2), rho2_tilde(A2) on adjoint monomials
  std::vector<Complex> on_k(mk.size()), on_k_u(mk.size()), on_i(mi.size()), on_i_tilde(mi.size());
  for (std::size_t a = 0; a < mk.size(); ++a) {
    const PauliString adj = mk[a].adjoint();
    on_k[a] = kernels::tau_product(adj, g1);
    on_k_u[a] = kernels::tau_product(adj, ug1);
  }
  for (std::size_t b = 0; b < mi.size(); ++b) {
    const PauliString adj = mi[b].adjoint();
    on_i[b] = kernels::tau_product(adj, g2);
    on_i_tilde[b] = kernels::tau_product(adj, g2t);
  }

  // G = sum_f psi(f^dag) f over f = m_K m_I, and f^dag = (-1)^{p_K p_I} m_K^dag m_I^dag
  std::vector<PauliString> basis;
  std::vector<Complex> coeffs;
  basis.reserve(mk.size() * mi.size());
  coeffs.reserve(mk.size() * mi.size());
  for (std::size_t a = 0; a < mk.size(); ++a) {
    const bool k_odd = !monomial_is_even(a);
    for (std::size_t b = 0; b < mi.size(); ++b) {
      const bool i_odd = !monomial_is_even(b);
      const Complex value = i_odd ? on_k_u[a] * on_i_tilde[b] : on_k[a] * on_i[b];
      basis.push_back(mk[a] * mi[b]);
      coeffs.push_back((k_odd && i_odd) ? -value : value);
    }
  }
  const Matrix g = kernels::assemble(basis, coeffs, dim);
  return State::from_local(ctx, KI, hermitize(g) / static_cast<double>(dim));
}

bool ViolationDemo::reproduced() const {
  return mono_ssa_violated() && triangle_violated() && ssa_holds() && residual_K <= 1e-10 &&
         residual_I <= 1e-10 && entropy_residual <= 1e-9 && kj_residual <= 1e-9;
}

ViolationDemo violation_demo(const ContextPtr& ctx, const Region& K, const Region& I, const Region& J,
                             const State& rhoJ, const std::optional<State>& rho2_tilde,
                             const Tolerance& tol) {
  require_mutually_disjoint(K, I, J);
  if (!is_even(rhoJ)) throw UnsupportedExtensionError("rhoJ must be even for the product extension");
  ExtensionRecipe recipe = make_recipe(ctx, K, I, J, rho2_tilde, rhoJ);
  State psi = joint_extension(recipe);
  State full = product_extension(psi, recipe.rhoJ);

  ViolationDemo d{std::move(recipe), psi, full};
  auto S = [&](const Region& r) { return r.empty() ? 0.0 : entropy(restrict(d.full, r)); };
  d.s_K = S(K);
  d.s_I = S(I);
  d.s_J = S(J);
  d.s_KI = S(K.unite(I));
  d.s_KJ = S(K.unite(J));
  d.s_KIJ = S(K.unite(I).unite(J));
  d.s_rho2_tilde = entropy(d.recipe.rho2_tilde);
  d.residual_K = density_distance(restrict(d.psi, K), d.recipe.rho1);
  d.residual_I = density_distance(restrict(d.psi, I), d.recipe.rho2);
  d.entropy_residual = std::abs(entropy(d.psi) - d.s_rho2_tilde);
  d.kj_residual = std::abs(d.s_KJ - d.s_J);
  d.report = evaluate_inequalities(d.full, {I, J, K}, tol);
  return d;
}

}  // namespace carent
