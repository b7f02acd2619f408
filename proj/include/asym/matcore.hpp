#pragma once

// Dense complex matrix kernel: Hermitian eigendecomposition and the matrix
// functions the rest of the library is built on. Eigen supplies the solver;
// the contracts (ascending eigenvalues, reconstruction bound, zero-threshold
// rank rule) are enforced here.

#include <functional>

#include "asym/errors.hpp"
#include "asym/types.hpp"

namespace asym {

struct HermitianEig {
    RealVector eigenvalues;  // ascending
    Matrix eigenvectors;     // unitary, columns matched to eigenvalues
};

// Throws NonFiniteError if any entry is NaN/Inf.
void require_finite(const Matrix& m, const char* what);

// ||H - H^dagger||_F <= tol * max(1, ||H||_F)
bool is_hermitian(const Matrix& h, double tolerance = tol::kHermitian);

HermitianEig eig_hermitian(const Matrix& h);

// V f(lambda) V^dagger. With support_only set, eigenvalues at or below the
// zero threshold are treated as exact zeros and skipped (log, inverse powers).
// Throws DomainError if f produces a non-finite value on a kept eigenvalue.
Matrix func_hermitian(const Matrix& h, const std::function<double(double)>& f,
                      bool support_only = false);

// Square root of the Moore-Penrose pseudoinverse of a PSD matrix:
// sum_{lambda_i > tau} lambda_i^{-1/2} |phi_i><phi_i|.
Matrix pinv_sqrt(const Matrix& psd);

// Orthogonal projector onto the kernel (eigenvalues <= tau) of a PSD matrix.
Matrix kernel_projector(const Matrix& psd);

// Complement of kernel_projector: projector onto the support.
Matrix support_projector(const Matrix& psd);

Matrix kron(const Matrix& a, const Matrix& b);

// (1/2) sum of singular values of a - b; inputs must be Hermitian and same shape.
double trace_norm_distance(const Matrix& a, const Matrix& b);

double frobenius(const Matrix& m);

}  // namespace asym
