#pragma once

#include <optional>

#include "carent/inequalities.hpp"
#include "carent/states.hpp"

namespace carent {

/// Inputs of the noneven joint extension on K u I, plus the even state on J
/// used by the violation demo.
struct ExtensionRecipe {
  Region K, I, J;
  State rho1;        // pure, p_theta = 0, on K
  State rho2_tilde;  // on I, differs from its Theta image
  State rho2;        // (rho2_tilde + rho2_tilde Theta) / 2
  State rhoJ;        // even, on J
  OperatorElement u1;
};

/// Vector state of a unit eigenvector eta of an odd self-adjoint A in A_K.
/// Default A = a_k + a_k^dag for the first site k of K, eta the normalized
/// projection of the vacuum onto its +1 eigenspace. A custom A must have a
/// nondegenerate top eigenvalue, which selects eta.
State odd_eigenvector_state(const ContextPtr& ctx, const Region& K,
                            const std::optional<OperatorElement>& A = std::nullopt);

/// (rho + rho Theta) / 2.
State symmetrize(const State& rho2_tilde);

/// Self-adjoint unitary implementing Theta on A_K for a pure rho1; this is v_K.
OperatorElement u1_for(const AlgebraContext& ctx, const Region& K, const State& rho1);

/// Recipe with the standard defaults: rho1 and rho2_tilde odd eigenvector
/// states, rhoJ tracial.
ExtensionRecipe make_recipe(const ContextPtr& ctx, const Region& K, const Region& I, const Region& J,
                            const std::optional<State>& rho2_tilde = std::nullopt,
                            const std::optional<State>& rhoJ = std::nullopt);

/// Throws PreconditionError naming the first failed recipe invariant.
void validate_recipe(const ExtensionRecipe& recipe);

/// The state psi on A_{K u I} with
/// psi(A1 A2) = rho1(A1) rho2(A2+) + rho1(A1 u1) rho2_tilde(A2-),
/// rebuilt from its values on the monomial basis.
State joint_extension(const ExtensionRecipe& recipe);

struct ViolationDemo {
  ExtensionRecipe recipe;
  State psi;   // on K u I
  State full;  // psi o rhoJ on K u I u J

  double s_K = 0, s_I = 0, s_J = 0, s_KI = 0, s_KJ = 0, s_KIJ = 0;
  double s_rho2_tilde = 0;
  double residual_K = 0;         // ||psi|_K - rho1||
  double residual_I = 0;         // ||psi|_I - rho2||
  double entropy_residual = 0;   // |S(psi) - S(rho2_tilde)|
  double kj_residual = 0;        // |S(K u J) - S(J)|
  InequalityReport report;       // gaps on `full` with regions (I, J, K)

  bool mono_ssa_violated() const { return report.mono_ssa == Verdict::Violated; }
  bool triangle_violated() const { return report.triangle == Verdict::Violated; }
  bool ssa_holds() const { return report.ssa == Verdict::Holds; }
  bool reproduced() const;
};

/// Builds psi o rhoJ and evaluates MONO-SSA, triangle and SSA on it.
ViolationDemo violation_demo(const ContextPtr& ctx, const Region& K, const Region& I, const Region& J,
                             const State& rhoJ, const std::optional<State>& rho2_tilde = std::nullopt,
                             const Tolerance& tol = {});

}  // namespace carent
