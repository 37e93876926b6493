#include "carent/pauli.hpp"

#include "carent/error.hpp"

namespace carent {

namespace {
constexpr Complex kPhases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
}

Complex PauliString::coefficient() const { return kPhases[phase & 3]; }

PauliString PauliString::adjoint() const {
  // (X^x Z^z)^dag = Z^z X^x = (-1)^{|z&x|} X^x Z^z
  const int flips = std::popcount(x & z) & 1;
  return {x, z, static_cast<std::uint8_t>((4 - phase + 2 * flips) & 3)};
}

Complex PauliString::factor(std::uint32_t b) const {
  const int k = (phase + 2 * (std::popcount(z & b) & 1)) & 3;
  return kPhases[k];
}

PauliString operator*(const PauliString& a, const PauliString& b) {
  const int flips = std::popcount(a.z & b.x) & 1;
  return {a.x ^ b.x, a.z ^ b.z, static_cast<std::uint8_t>((a.phase + b.phase + 2 * flips) & 3)};
}

Matrix to_dense(const PauliString& p, int sites) {
  const std::uint32_t dim = 1u << sites;
  Matrix m = Matrix::Zero(dim, dim);
  for (std::uint32_t b = 0; b < dim; ++b) m(p.target(b), b) = p.factor(b);
  return m;
}

PauliString majorana(int sites, int position, int which) {
  if (position < 1 || position > sites) throw ArgumentError("majorana position out of range");
  const std::uint32_t bit = 1u << (sites - position);
  // Z string on every earlier position
  std::uint32_t zs = 0;
  for (int p = 1; p < position; ++p) zs |= 1u << (sites - p);
  if (which == 0) return {bit, zs, 0};
  // Y = i X Z
  return {bit, zs | bit, 1};
}

std::vector<PauliString> majorana_monomials(int sites, std::span<const int> positions) {
  const std::size_t gens = 2 * positions.size();
  std::vector<PauliString> single;
  single.reserve(gens);
  for (int p : positions) {
    single.push_back(majorana(sites, p, 0));
    single.push_back(majorana(sites, p, 1));
  }
  const std::size_t count = std::size_t{1} << gens;
  std::vector<PauliString> out(count);
  out[0] = PauliString{};
  // out[S] = out[S without its highest bit] * gamma_highest keeps increasing order
  for (std::size_t s = 1; s < count; ++s) {
    const int hi = std::bit_width(s) - 1;
    out[s] = out[s & ~(std::size_t{1} << hi)] * single[hi];
  }
  return out;
}

PauliString parity_string(int sites, std::span<const int> positions) {
  // a^dag a - a a^dag = 2n - 1 = -Z on each site
  PauliString v;
  for (int p : positions) {
    v.z |= 1u << (sites - p);
    v.phase = static_cast<std::uint8_t>((v.phase + 2) & 3);
  }
  return v;
}

}  // namespace carent
