#include "carent/inequalities.hpp"

#include <cmath>
#include <random>

#include "carent/error.hpp"

namespace carent {

namespace {

double region_entropy(const State& phi, const Region& r) {
  if (r.empty()) return 0.0;
  return entropy(restrict(phi, r));
}

void require_inside(const State& phi, const Region& r) {
  if (!phi.region().contains(r))
    throw ArgumentError("region " + r.to_string() + " not inside state region " + phi.region().to_string());
}

void require_disjoint(const Region& a, const Region& b) {
  if (!a.disjoint(b)) throw ArgumentError("regions " + a.to_string() + " and " + b.to_string() + " overlap");
}

Matrix random_operator(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    for (Eigen::Index r = 0; r < dim; ++r) m(r, c) = Complex(normal(rng), normal(rng));
  return m;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Violated: return "violated";
    case Verdict::Indeterminate: return "indeterminate";
  }
  return "unknown";
}

Verdict classify(double violation, const Tolerance& tol) {
  if (violation <= tol.holds) return Verdict::Holds;
  if (violation > tol.violated) return Verdict::Violated;
  return Verdict::Indeterminate;
}

double ssa_gap(const State& phi, const Region& I, const Region& J) {
  require_inside(phi, I);
  require_inside(phi, J);
  return region_entropy(phi, I.unite(J)) - region_entropy(phi, I) - region_entropy(phi, J) +
         region_entropy(phi, I.intersect(J));
}

double triangle_gap(const State& phi, const Region& I, const Region& J) {
  require_disjoint(I, J);
  require_inside(phi, I.unite(J));
  return region_entropy(phi, I.unite(J)) - std::abs(region_entropy(phi, I) - region_entropy(phi, J));
}

double mono_ssa_gap(const State& phi, const Region& I, const Region& J, const Region& K) {
  require_disjoint(I, J);
  require_disjoint(I, K);
  require_disjoint(J, K);
  require_inside(phi, I.unite(J).unite(K));
  return region_entropy(phi, K.unite(I)) + region_entropy(phi, K.unite(J)) - region_entropy(phi, I) -
         region_entropy(phi, J);
}

std::vector<double> monotonicity_curve(const State& phi, const Region& I, const Region& J,
                                       std::span<const Region> chain) {
  std::vector<double> out;
  for (std::size_t k = 0; k < chain.size(); ++k) {
    const Region& K = chain[k];
    if (k > 0 && !K.contains(chain[k - 1])) throw ArgumentError("chain is not nested at step " + std::to_string(k));
    require_disjoint(K, I);
    require_disjoint(K, J);
    require_inside(phi, K.unite(I).unite(J));
    out.push_back(region_entropy(phi, K.unite(I)) + region_entropy(phi, K.unite(J)));
  }
  return out;
}

MixingReport mixing_bounds_check(const State& phi, const State& psi, double lambda) {
  if (lambda < 0 || lambda > 1) throw ArgumentError("mixing weight outside [0, 1]");
  MixingReport rep;
  const State m = mix(lambda, phi, psi);
  const double sp = entropy(phi), sq = entropy(psi);
  rep.mixture_entropy = entropy(m);
  const double avg = lambda * sp + (1 - lambda) * sq;
  double binary = 0;
  if (lambda > 0 && lambda < 1) binary = -lambda * std::log(lambda) - (1 - lambda) * std::log(1 - lambda);
  rep.concavity_slack = rep.mixture_entropy - avg;
  rep.convexity_slack = avg + binary - rep.mixture_entropy;
  rep.holds = rep.concavity_slack >= -1e-9 && rep.convexity_slack >= -1e-9;
  return rep;
}

CommutingSquareReport commuting_square_check(const State& phi, const Region& I, const Region& J,
                                             std::uint64_t seed, int samples) {
  require_inside(phi, I);
  require_inside(phi, J);
  const Region R = phi.region();
  const Region IJ = I.unite(J);
  const Region meet = I.intersect(J);
  std::mt19937_64 rng(seed);

  auto E = [&](const Region& sub, const Matrix& x) {
    return embed_operator(project_operator(x, R, sub), sub, R);
  };

  CommutingSquareReport rep;
  rep.samples = samples;
  for (int k = 0; k < samples; ++k) {
    const Matrix x = embed_operator(random_operator(Eigen::Index{1} << IJ.size(), rng), IJ, R);
    const Matrix e_meet = E(meet, x);
    const Matrix e_i = E(I, x);
    const Matrix e_j = E(J, x);
    const double scale = std::max(1.0, x.cwiseAbs().maxCoeff());
    rep.max_residual = std::max({rep.max_residual,
                                 (E(meet, e_i) - e_meet).cwiseAbs().maxCoeff() / scale,
                                 (E(meet, e_j) - e_meet).cwiseAbs().maxCoeff() / scale,
                                 (E(I, e_j) - e_meet).cwiseAbs().maxCoeff() / scale,
                                 (E(J, e_i) - e_meet).cwiseAbs().maxCoeff() / scale});
  }
  rep.holds = rep.max_residual <= 1e-10;
  return rep;
}

InequalityReport evaluate_inequalities(const State& phi, const InequalityRegions& regions,
                                       const Tolerance& tol) {
  InequalityReport rep;
  rep.regions = regions;
  rep.tolerance = tol;
  rep.even = is_even(phi);
  const auto& [I, J, K] = regions;
  rep.ssa_gap = ssa_gap(phi, K.unite(I), K.unite(J));
  rep.triangle_gap = K.empty() ? triangle_gap(phi, I, J) : triangle_gap(phi, I, K);
  rep.mono_ssa_gap = mono_ssa_gap(phi, I, J, K);
  rep.ssa = classify(rep.ssa_gap, tol);
  rep.triangle = classify(-rep.triangle_gap, tol);
  rep.mono_ssa = classify(-rep.mono_ssa_gap, tol);
  return rep;
}

}  // namespace carent
