#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "carent/states.hpp"

namespace carent {

enum class Verdict { Holds, Violated, Indeterminate };

std::string to_string(Verdict v);

/// "Holds" when the violation amount is at most `holds`; "Violated" above
/// `violated`; anything between is numerically indeterminate.
struct Tolerance {
  double holds = 1e-9;
  double violated = 1e-6;
};

Verdict classify(double violation, const Tolerance& tol = {});

/// S(I u J) - S(I) - S(J) + S(I n J); positive means SSA fails.
double ssa_gap(const State& phi, const Region& I, const Region& J);
/// S(I u J) - |S(I) - S(J)| for disjoint I, J; negative means violation.
double triangle_gap(const State& phi, const Region& I, const Region& J);
/// S(K u I) + S(K u J) - S(I) - S(J) for mutually disjoint I, J, K; negative means violation.
double mono_ssa_gap(const State& phi, const Region& I, const Region& J, const Region& K);

/// K -> S(K u I) + S(K u J) along a nested chain of regions disjoint from I and J.
std::vector<double> monotonicity_curve(const State& phi, const Region& I, const Region& J,
                                       std::span<const Region> chain);

struct MixingReport {
  double mixture_entropy = 0;
  double concavity_slack = 0;  // S(mix) - lambda S(phi) - (1-lambda) S(psi)
  double convexity_slack = 0;  // upper bound minus S(mix)
  bool holds = false;          // both slacks >= -1e-9
};

MixingReport mixing_bounds_check(const State& phi, const State& psi, double lambda);

struct CommutingSquareReport {
  double max_residual = 0;
  int samples = 0;
  bool holds = false;  // max_residual <= 1e-10
};

/// Checks E_{InJ} E_I = E_{InJ} E_J = E_{InJ} and E_I E_J = E_{InJ} on random
/// operators of A_{I u J} inside phi's region.
CommutingSquareReport commuting_square_check(const State& phi, const Region& I, const Region& J,
                                             std::uint64_t seed = 0, int samples = 4);

/// Regions for a full inequality evaluation. SSA uses (K u I, K u J); the
/// triangle inequality uses (I, K) when K is nonempty and (I, J) otherwise.
struct InequalityRegions {
  Region I, J, K;
};

struct InequalityReport {
  InequalityRegions regions;
  bool even = false;
  double ssa_gap = 0;
  double triangle_gap = 0;
  double mono_ssa_gap = 0;
  Verdict ssa = Verdict::Holds;
  Verdict triangle = Verdict::Holds;
  Verdict mono_ssa = Verdict::Holds;
  Tolerance tolerance;
};

InequalityReport evaluate_inequalities(const State& phi, const InequalityRegions& regions,
                                       const Tolerance& tol = {});

}  // namespace carent
