#include "carent/kernels.hpp"

#ifdef CARENT_HAVE_OPENMP
#include <omp.h>
#endif

namespace carent::kernels {

namespace {

// Below this many (string, column) visits the thread fan-out costs more than it saves.
constexpr long long kParallelWork = 1 << 15;

bool use_parallel(std::size_t strings, Eigen::Index dim) {
#ifdef CARENT_HAVE_OPENMP
  if (omp_in_parallel()) return false;
  return static_cast<long long>(strings) * dim >= kParallelWork;
#else
  (void)strings;
  (void)dim;
  return false;
#endif
}

Complex expand_one(const PauliString& p, const Matrix& x) {
  const auto dim = static_cast<std::uint32_t>(x.cols());
  Complex acc = 0;
  for (std::uint32_t c = 0; c < dim; ++c) acc += std::conj(p.factor(c)) * x(p.target(c), c);
  return acc / static_cast<double>(dim);
}

void expand_range(std::span<const PauliString> basis, const Matrix& x, Complex* out, std::size_t lo,
                  std::size_t hi) {
  for (std::size_t k = lo; k < hi; ++k) out[k] = expand_one(basis[k], x);
}

}  // namespace

std::vector<Complex> expand_serial(std::span<const PauliString> basis, const Matrix& x) {
  std::vector<Complex> out(basis.size());
  expand_range(basis, x, out.data(), 0, basis.size());
  return out;
}

std::vector<Complex> expand_parallel(std::span<const PauliString> basis, const Matrix& x) {
  std::vector<Complex> out(basis.size());
  Complex* dst = out.data();
  const std::size_t count = basis.size();
  // one contiguous block per thread
#pragma omp parallel
  {
    std::size_t lo = 0, hi = count;
#ifdef CARENT_HAVE_OPENMP
    const auto t = static_cast<std::size_t>(omp_get_thread_num());
    const auto nt = static_cast<std::size_t>(omp_get_num_threads());
    lo = count * t / nt;
    hi = count * (t + 1) / nt;
#endif
    expand_range(basis, x, dst, lo, hi);
  }
  return out;
}

std::vector<Complex> expand(std::span<const PauliString> basis, const Matrix& x) {
  return use_parallel(basis.size(), x.cols()) ? expand_parallel(basis, x) : expand_serial(basis, x);
}

Matrix assemble_serial(std::span<const PauliString> basis, std::span<const Complex> coeffs,
                       Eigen::Index dim) {
  Matrix m = Matrix::Zero(dim, dim);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    if (coeffs[k] == Complex{}) continue;
    const auto& p = basis[k];
    for (std::uint32_t b = 0; b < static_cast<std::uint32_t>(dim); ++b)
      m(p.target(b), b) += coeffs[k] * p.factor(b);
  }
  return m;
}

Matrix assemble_parallel(std::span<const PauliString> basis, std::span<const Complex> coeffs,
                         Eigen::Index dim) {
  Matrix m = Matrix::Zero(dim, dim);
  // Column b is written only by iteration b.
#pragma omp parallel for schedule(static)
  for (Eigen::Index b = 0; b < dim; ++b) {
    const auto ub = static_cast<std::uint32_t>(b);
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (coeffs[k] == Complex{}) continue;
      m(basis[k].target(ub), b) += coeffs[k] * basis[k].factor(ub);
    }
  }
  return m;
}

Matrix assemble(std::span<const PauliString> basis, std::span<const Complex> coeffs,
                Eigen::Index dim) {
  return use_parallel(basis.size(), dim) ? assemble_parallel(basis, coeffs, dim)
                                         : assemble_serial(basis, coeffs, dim);
}

Complex tau_product(const PauliString& p, const Matrix& x) {
  const auto dim = static_cast<std::uint32_t>(x.cols());
  Complex acc = 0;
  for (std::uint32_t c = 0; c < dim; ++c) acc += p.factor(c) * x(c, p.target(c));
  return acc / static_cast<double>(dim);
}

bool parallel_available() {
#ifdef CARENT_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef CARENT_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace carent::kernels
