#include "carent/car_algebra.hpp"

#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "carent/error.hpp"
#include "carent/kernels.hpp"

namespace carent {

namespace {

std::vector<int> positions(const Region& r) { return r.sites(); }

double max_abs(const Matrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

int numeric_rank(const Matrix& gram, double tol) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (gram + gram.adjoint()), Eigen::EigenvaluesOnly);
  const double top = es.eigenvalues().cwiseAbs().maxCoeff();
  int rank = 0;
  for (double v : es.eigenvalues())
    if (v > tol * std::max(1.0, top)) ++rank;
  return rank;
}

}  // namespace

AlgebraContext::AlgebraContext(int sites) : sites_(sites) {
  if (sites < 1 || sites > kMaxSites)
    throw SizeError("site count " + std::to_string(sites) + " outside [1, " +
                    std::to_string(kMaxSites) + "]");
  const auto d = static_cast<std::uint32_t>(dim());
  parity_signs_.resize(d);
  // v_Lambda = prod(-Z): (-1)^n (-1)^{popcount(b)}
  const double base = (sites % 2) ? -1.0 : 1.0;
  for (std::uint32_t b = 0; b < d; ++b) parity_signs_[b] = (std::popcount(b) & 1) ? -base : base;
}

ContextPtr build_context(int sites) { return std::make_shared<const AlgebraContext>(sites); }

void AlgebraContext::check_region(const Region& r) const {
  if (!r.empty() && r.back() > sites_)
    throw ArgumentError("region " + r.to_string() + " outside lattice of " +
                        std::to_string(sites_) + " sites");
}

PauliString AlgebraContext::majorana(int site, int which) const {
  return carent::majorana(sites_, site, which);
}

Matrix AlgebraContext::annihilator(int site) const {
  // a = (c1 + i c2) / 2
  return 0.5 * (to_dense(majorana(site, 0), sites_) +
                Complex(0, 1) * to_dense(majorana(site, 1), sites_));
}

Matrix AlgebraContext::creator(int site) const { return annihilator(site).adjoint(); }

std::vector<PauliString> AlgebraContext::monomials(const Region& region) const {
  check_region(region);
  const auto pos = positions(region);
  return majorana_monomials(sites_, pos);
}

PauliString AlgebraContext::parity(const Region& region) const {
  check_region(region);
  const auto pos = positions(region);
  return parity_string(sites_, pos);
}

OperatorElement parity_unitary(const AlgebraContext& ctx, const Region& region) {
  ctx.check_region(region);
  OperatorElement out{to_dense(ctx.parity(region), ctx.sites()), region, {}};
  if (region.empty()) out.note = "empty region: parity unitary is the identity";
  return out;
}

Matrix theta(const AlgebraContext& ctx, const Matrix& x) {
  const auto& s = ctx.lattice_parity_signs();
  Matrix out(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c)
    for (Eigen::Index r = 0; r < x.rows(); ++r) out(r, c) = s[r] * s[c] * x(r, c);
  return out;
}

OperatorElement theta(const AlgebraContext& ctx, const OperatorElement& x) {
  return {theta(ctx, x.matrix), x.region, {}};
}

std::pair<OperatorElement, OperatorElement> grade_split(const AlgebraContext& ctx,
                                                        const OperatorElement& x) {
  const Matrix t = theta(ctx, x.matrix);
  return {{0.5 * (x.matrix + t), x.region, {}}, {0.5 * (x.matrix - t), x.region, {}}};
}

std::vector<OperatorElement> monomial_basis(const AlgebraContext& ctx, const Region& region) {
  std::vector<OperatorElement> out;
  for (const auto& p : ctx.monomials(region)) out.push_back({to_dense(p, ctx.sites()), region, {}});
  return out;
}

Matrix conditional_expectation(const AlgebraContext& ctx, const Region& region, const Matrix& x) {
  const auto basis = ctx.monomials(region);
  const auto coeffs = kernels::expand(basis, x);
  return kernels::assemble(basis, coeffs, ctx.dim());
}

double membership_residual(const AlgebraContext& ctx, const OperatorElement& x) {
  const Matrix proj = conditional_expectation(ctx, x.region, x.matrix);
  const double norm = x.matrix.norm();
  return norm > 0 ? (x.matrix - proj).norm() / norm : 0.0;
}

bool is_member(const AlgebraContext& ctx, const OperatorElement& x, double tol) {
  return membership_residual(ctx, x) < tol;
}

double car_residual(const AlgebraContext& ctx) {
  const int n = ctx.sites();
  std::vector<Matrix> a, ad;
  for (int i = 1; i <= n; ++i) {
    a.push_back(ctx.annihilator(i));
    ad.push_back(a.back().adjoint());
  }
  const Matrix id = Matrix::Identity(ctx.dim(), ctx.dim());
  double worst = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double delta = i == j ? 1.0 : 0.0;
      worst = std::max(worst, max_abs(ad[i] * a[j] + a[j] * ad[i] - delta * id));
      worst = std::max(worst, max_abs(a[i] * a[j] + a[j] * a[i]));
      worst = std::max(worst, max_abs(ad[i] * ad[j] + ad[j] * ad[i]));
    }
  }
  return worst;
}

CommutantReport relative_commutant_check(const AlgebraContext& ctx, const Region& I,
                                         const Region& J) {
  ctx.check_region(I);
  ctx.check_region(J);
  if (I.empty()) throw ArgumentError("relative commutant check needs a nonempty I");
  if (!I.disjoint(J)) throw ArgumentError("regions " + I.to_string() + " and " + J.to_string() + " overlap");

  CommutantReport rep;
  rep.I = I;
  rep.J = J;
  rep.expected_dimension = 1 << (2 * J.size());

  const int n = ctx.sites();
  const auto dim = ctx.dim();
  const PauliString vI = ctx.parity(I);
  const auto mono_J = ctx.monomials(J);

  // candidate span A_J+ + v_I A_J-
  std::vector<Matrix> candidates;
  candidates.reserve(mono_J.size());
  for (std::size_t s = 0; s < mono_J.size(); ++s)
    candidates.push_back(to_dense(monomial_is_even(s) ? mono_J[s] : vI * mono_J[s], n));

  Matrix flat(dim * dim, static_cast<Eigen::Index>(candidates.size()));
  for (std::size_t k = 0; k < candidates.size(); ++k)
    flat.col(static_cast<Eigen::Index>(k)) = Eigen::Map<const Vector>(candidates[k].data(), dim * dim);
  const Matrix gram = flat.adjoint() * flat / static_cast<double>(dim);
  rep.candidate_dimension = numeric_rank(gram, 1e-10);

  std::vector<Matrix> gens;
  for (int i : I.sites()) {
    gens.push_back(ctx.annihilator(i));
    gens.push_back(ctx.creator(i));
  }
  for (const auto& c : candidates)
    for (const auto& g : gens) rep.max_commutator = std::max(rep.max_commutator, max_abs(c * g - g * c));

  // Independent count: a monomial lies in A_I' iff it commutes with every Majorana of I.
  std::vector<PauliString> maj_I;
  for (int i : I.sites()) {
    maj_I.push_back(ctx.majorana(i, 0));
    maj_I.push_back(ctx.majorana(i, 1));
  }
  auto commutes_with_I = [&](const PauliString& p) {
    for (const auto& m : maj_I)
      if (!p.commutes_with(m)) return false;
    return true;
  };
  std::vector<PauliString> commutant;
  for (const auto& p : ctx.monomials(I.unite(J)))
    if (commutes_with_I(p)) commutant.push_back(p);
  rep.commutant_dimension = static_cast<int>(commutant.size());

  for (const auto& c : candidates) {
    const auto coeffs = kernels::expand(commutant, c);
    const Matrix back = kernels::assemble(commutant, coeffs, dim);
    rep.max_span_residual = std::max(rep.max_span_residual, (c - back).norm());
  }

  rep.commutant_in_J_is_even = true;
  for (std::size_t s = 0; s < mono_J.size(); ++s) {
    if (!commutes_with_I(mono_J[s])) continue;
    ++rep.commutant_in_J_dimension;
    if (!monomial_is_even(s)) rep.commutant_in_J_is_even = false;
  }
  const int even_dim = J.empty() ? 1 : rep.expected_dimension / 2;

  rep.passed = rep.candidate_dimension == rep.expected_dimension &&
               rep.commutant_dimension == rep.expected_dimension && rep.max_commutator <= 1e-12 &&
               rep.max_span_residual <= 1e-10 && rep.commutant_in_J_dimension == even_dim &&
               rep.commutant_in_J_is_even;
  return rep;
}

}  // namespace carent
