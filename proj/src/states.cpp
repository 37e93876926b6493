#include "carent/states.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>

#include "carent/error.hpp"
#include "carent/kernels.hpp"

namespace carent {

namespace {

std::vector<int> identity_positions(int count) {
  std::vector<int> p(count);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

double scale_of(const Region& r) { return std::ldexp(1.0, r.size()); }

void require_same_algebra(const State& a, const State& b) {
  if (a.context() != b.context()) throw ArgumentError("states live on different lattices");
  if (a.region() != b.region())
    throw ArgumentError("states live on different regions " + a.region().to_string() + " and " +
                        b.region().to_string());
}

}  // namespace

Matrix embed_operator(const Matrix& op, const Region& sub, const Region& super) {
  if (!super.contains(sub))
    throw ArgumentError("region " + sub.to_string() + " not contained in " + super.to_string());
  const Eigen::Index sub_dim = Eigen::Index{1} << sub.size();
  if (op.rows() != sub_dim || op.cols() != sub_dim)
    throw ArgumentError("operator dimension does not match region " + sub.to_string());
  if (sub == super) return op;
  const auto own = identity_positions(sub.size());
  const auto src = majorana_monomials(sub.size(), own);
  const auto coeffs = kernels::expand(src, op);
  const auto dst = majorana_monomials(super.size(), super.positions_of(sub));
  return kernels::assemble(dst, coeffs, Eigen::Index{1} << super.size());
}

Matrix project_operator(const Matrix& op, const Region& super, const Region& sub) {
  if (!super.contains(sub))
    throw ArgumentError("region " + sub.to_string() + " not contained in " + super.to_string());
  const Eigen::Index super_dim = Eigen::Index{1} << super.size();
  if (op.rows() != super_dim || op.cols() != super_dim)
    throw ArgumentError("operator dimension does not match region " + super.to_string());
  if (sub == super) return op;
  const auto src = majorana_monomials(super.size(), super.positions_of(sub));
  const auto coeffs = kernels::expand(src, op);
  const auto own = identity_positions(sub.size());
  const auto dst = majorana_monomials(sub.size(), own);
  return kernels::assemble(dst, coeffs, Eigen::Index{1} << sub.size());
}

State State::from_local(ContextPtr ctx, Region region, const Matrix& rho) {
  if (!ctx) throw ArgumentError("null algebra context");
  ctx->check_region(region);
  const Eigen::Index dim = Eigen::Index{1} << region.size();
  if (rho.rows() != dim || rho.cols() != dim)
    throw ArgumentError("density dimension " + std::to_string(rho.rows()) + " does not match region " +
                        region.to_string());
  const double scale = std::max(1.0, rho.cwiseAbs().maxCoeff());
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw ArgumentError("density is not Hermitian");
  Matrix h = hermitize(rho);
  const double tr = h.trace().real();
  if (std::abs(tr - 1.0) > 1e-10) throw NotAStateError("density trace " + std::to_string(tr) + " != 1");
  auto spectrum = eigh(h);
  const double low = spectrum.eigenvalues[spectrum.eigenvalues.size() - 1];
  if (low < -1e-10) throw NotAStateError("density has eigenvalue " + std::to_string(low));
  return State(std::make_shared<const Data>(
      Data{std::move(ctx), std::move(region), std::move(h), std::move(spectrum)}));
}

State State::from_global(ContextPtr ctx, Region region, const Matrix& global) {
  if (!ctx) throw ArgumentError("null algebra context");
  ctx->check_region(region);
  const Region lattice = ctx->lattice();
  if (global.rows() != ctx->dim() || global.cols() != ctx->dim())
    throw ArgumentError("global density must be 2^n x 2^n");
  const Matrix g = project_operator(global, lattice, region);
  const Matrix back = embed_operator(g, region, lattice);
  const double norm = global.norm();
  if (norm > 0 && (global - back).norm() / norm > 1e-10)
    throw ArgumentError("density does not lie in A_" + region.to_string());
  return from_local(std::move(ctx), std::move(region), g / scale_of(region));
}

State State::tracial(ContextPtr ctx, Region region) {
  const Eigen::Index dim = Eigen::Index{1} << region.size();
  return from_local(std::move(ctx), std::move(region),
                    Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

State State::vector_state(ContextPtr ctx, Region region, const Vector& psi) {
  const double norm = psi.norm();
  if (std::abs(norm - 1.0) > 1e-10) throw ArgumentError("vector state needs a unit vector");
  return from_local(std::move(ctx), std::move(region), psi * psi.adjoint());
}

Matrix State::global() const {
  return embed_operator(scale_of(region()) * local(), region(), context()->lattice());
}

Complex State::expect(const Matrix& a_global) const {
  const Matrix a = project_operator(a_global, context()->lattice(), region());
  return expect_local(a);
}

double entropy(const State& s) { return shannon_nats(s.spectrum().eigenvalues); }

State restrict(const State& s, const Region& sub) {
  if (!s.region().contains(sub))
    throw ArgumentError("cannot restrict a state on " + s.region().to_string() + " to " + sub.to_string());
  if (sub == s.region()) return s;
  const Matrix g = project_operator(scale_of(s.region()) * s.local(), s.region(), sub);
  return State::from_local(s.context(), sub, g / scale_of(sub));
}

std::vector<double> local_parity_signs(int sites) {
  std::vector<double> s(std::size_t{1} << sites);
  for (std::uint32_t b = 0; b < s.size(); ++b) s[b] = (std::popcount(b) & 1) ? -1.0 : 1.0;
  return s;
}

Matrix theta_local(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    const double sc = (std::popcount(static_cast<std::uint32_t>(c)) & 1) ? -1.0 : 1.0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double sr = (std::popcount(static_cast<std::uint32_t>(r)) & 1) ? -1.0 : 1.0;
      out(r, c) = sr * sc * m(r, c);
    }
  }
  return out;
}

State theta_state(const State& s) {
  return State::from_local(s.context(), s.region(), theta_local(s.local()));
}

bool is_even(const State& s, double tol) {
  const Matrix diff = theta_local(s.local()) - s.local();
  if (diff.size() == 0) return true;
  return diff.operatorNorm() <= tol;
}

double density_distance(const State& a, const State& b) {
  require_same_algebra(a, b);
  return (a.local() - b.local()).operatorNorm();
}

State mix(double lambda, const State& a, const State& b) {
  require_same_algebra(a, b);
  if (lambda < 0 || lambda > 1) throw ArgumentError("mixing weight outside [0, 1]");
  return State::from_local(a.context(), a.region(), lambda * a.local() + (1 - lambda) * b.local());
}

namespace {

// Square root of a density from its stored spectrum; eigenvalues at the
// numerical floor are zero, otherwise their roots (~1e-8) swamp small overlaps.
Matrix density_sqrt(const State& s) {
  const auto& sd = s.spectrum();
  const RealVector roots =
      sd.eigenvalues.unaryExpr([](double v) { return v > kEigenFloor ? std::sqrt(v) : 0.0; });
  return sd.eigenvectors * roots.asDiagonal() * sd.eigenvectors.adjoint();
}

}  // namespace

double transition_probability(const State& phi, const State& psi) {
  require_same_algebra(phi, psi);
  const double f = trace_norm(density_sqrt(phi) * density_sqrt(psi));
  return std::clamp(f * f, 0.0, 1.0);
}

double p_theta(const State& phi) { return std::sqrt(transition_probability(phi, theta_state(phi))); }

RelativeEntropy relative_entropy(const State& omega, const State& sigma) {
  require_same_algebra(omega, sigma);
  const auto& sd = sigma.spectrum();
  const Matrix& rho = omega.local();
  double cross = 0;
  double outside = 0;
  for (Eigen::Index k = 0; k < sd.eigenvalues.size(); ++k) {
    const auto v = sd.eigenvectors.col(k);
    const double w = (v.adjoint() * rho * v)(0, 0).real();
    if (sd.eigenvalues[k] > kEigenFloor)
      cross += w * std::log(sd.eigenvalues[k]);
    else
      outside += w;
  }
  if (outside > 1e-10) return {std::numeric_limits<double>::infinity(), true};
  double value = -entropy(omega) - cross;
  if (value < 0 && value > -1e-12) value = 0;
  return {value, false};
}

State random_state(ContextPtr ctx, const Region& region, bool even, int rank, std::uint64_t seed) {
  if (!ctx) throw ArgumentError("null algebra context");
  ctx->check_region(region);
  const Eigen::Index dim = Eigen::Index{1} << region.size();
  if (rank < 1 || rank > dim)
    throw ArgumentError("rank " + std::to_string(rank) + " outside [1, " + std::to_string(dim) + "]");
  std::mt19937_64 rng(seed);

  // random simplex point on `rank` of the diagonal slots
  std::vector<Eigen::Index> slots(dim);
  std::iota(slots.begin(), slots.end(), 0);
  for (Eigen::Index k = 0; k < rank; ++k) {
    std::uniform_int_distribution<Eigen::Index> pick(k, dim - 1);
    std::swap(slots[k], slots[pick(rng)]);
  }
  std::exponential_distribution<double> expo(1.0);
  RealVector diag = RealVector::Zero(dim);
  double total = 0;
  for (Eigen::Index k = 0; k < rank; ++k) {
    const double w = expo(rng) + 1e-3;
    diag[slots[k]] = w;
    total += w;
  }
  diag /= total;

  Matrix u = Matrix::Zero(dim, dim);
  if (even && dim > 1) {
    std::vector<Eigen::Index> sector[2];
    for (Eigen::Index b = 0; b < dim; ++b)
      sector[std::popcount(static_cast<std::uint32_t>(b)) & 1].push_back(b);
    for (const auto& idx : sector) {
      const Matrix block = haar_unitary(static_cast<Eigen::Index>(idx.size()), rng);
      for (std::size_t c = 0; c < idx.size(); ++c)
        for (std::size_t r = 0; r < idx.size(); ++r) u(idx[r], idx[c]) = block(r, c);
    }
  } else {
    u = haar_unitary(dim, rng);
  }
  const Matrix rho = u * diag.asDiagonal() * u.adjoint();
  return State::from_local(std::move(ctx), region, hermitize(rho));
}

State product_extension(const State& a, const State& b) {
  if (a.context() != b.context()) throw ArgumentError("states live on different lattices");
  if (!a.region().disjoint(b.region()))
    throw ArgumentError("product extension needs disjoint regions, got " + a.region().to_string() +
                        " and " + b.region().to_string());
  if (!is_even(a) && !is_even(b))
    throw UnsupportedExtensionError("product extension needs at least one even factor");
  const Region joint = a.region().unite(b.region());
  const Matrix ga = embed_operator(scale_of(a.region()) * a.local(), a.region(), joint);
  const Matrix gb = embed_operator(scale_of(b.region()) * b.local(), b.region(), joint);
  // one factor is even, so the two embedded densities commute
  return State::from_local(a.context(), joint, hermitize(ga * gb) / scale_of(joint));
}

}  // namespace carent
