#pragma once

#include <functional>
#include <vector>

#include "sfd/dense_matrix.hpp"
#include "sfd/rng.hpp"

namespace sfd {

struct SvdResult {
    DenseMatrix left;             // m x r
    std::vector<double> singular; // length r, descending, >= 0
    DenseMatrix right;            // d x r
    bool rank_deficient = false;  // some right columns were zeroed
};

// Eigendecomposition of a symmetric matrix by cyclic Jacobi sweeps.
// Eigenvalues are returned in descending order with matching eigenvector
// columns. Iterates until the off-diagonal Frobenius norm drops below
// off_tol (absolute, caller scales it).
struct EighResult {
    std::vector<double> values;
    DenseMatrix vectors; // column i is the eigenvector for values[i]
};
EighResult jacobi_eigh(const DenseMatrix& sym, double off_tol);

// Top-r SVD of a short-fat matrix (m <= d) via the m x m Gram matrix
// A*A^T and Jacobi. Right vectors are recovered as A^T u_i / s_i; columns
// whose singular value falls below 1e-10 * s_0 are zeroed and the result
// is flagged rank deficient.
SvdResult svd_top(const DenseMatrix& a, std::size_t r);

// Modified Gram-Schmidt with one reorthogonalization pass. Columns whose
// residual drops below 1e-12 * (largest input column norm) become zero
// columns.
DenseMatrix orthonormalize(const DenseMatrix& m);

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng);

std::vector<double> unit_sphere_vector(std::size_t d, Rng& rng);

// Power iteration estimate of the spectral norm of a symmetric PSD
// operator. Returns the final Rayleigh quotient.
using SymOp = std::function<std::vector<double>(const std::vector<double>&)>;
double spectral_norm_sym(const SymOp& apply, std::size_t d, std::size_t iterations, Rng& rng);

} // namespace sfd
