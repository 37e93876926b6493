#pragma once

// Data-parallel kernels behind every conditional expectation and region
// embedding. Each kernel has a serial reference and an OpenMP version; the
// dispatching entry points pick one by problem size.

#include <span>
#include <vector>

#include "carent/pauli.hpp"

namespace carent::kernels {

/// c_k = tau(P_k^dag X), tau the normalized trace on X's space.
std::vector<Complex> expand_serial(std::span<const PauliString> basis, const Matrix& x);
std::vector<Complex> expand_parallel(std::span<const PauliString> basis, const Matrix& x);
std::vector<Complex> expand(std::span<const PauliString> basis, const Matrix& x);

/// sum_k c_k P_k as a dense dim x dim matrix.
Matrix assemble_serial(std::span<const PauliString> basis, std::span<const Complex> coeffs,
                       Eigen::Index dim);
Matrix assemble_parallel(std::span<const PauliString> basis, std::span<const Complex> coeffs,
                         Eigen::Index dim);
Matrix assemble(std::span<const PauliString> basis, std::span<const Complex> coeffs,
                Eigen::Index dim);

/// tau(P X).
Complex tau_product(const PauliString& p, const Matrix& x);

/// True when the OpenMP kernels were compiled in.
bool parallel_available();
int max_threads();

}  // namespace carent::kernels
