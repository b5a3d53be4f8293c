#pragma once

#include <optional>

#include "sfd/la_core.hpp"
#include "sfd/sparse.hpp"

namespace sfd {

struct PowerConfig {
    double epsilon = 0.25;
    double q_constant = 1.0;
    std::optional<std::size_t> q_override;
};

// Number of block power sweeps for a matrix with m rows:
// max(1, ceil(c * ln(m/eps) / eps)), unless overridden.
std::size_t power_iteration_count(std::size_t m, const PowerConfig& cfg);

// Randomized block power method. Returns an orthonormal m x k basis Z
// approximating the top-k left singular subspace of the buffer. The long
// product A(A^TA)^q G is evaluated as q alternating matvec/rmatvec sweeps
// with re-orthonormalization after each one; in exact arithmetic the span
// matches the one-shot product.
DenseMatrix simultaneous_iteration(const SparseBuffer& a, std::size_t k,
                                   const PowerConfig& cfg, Rng& rng);

} // namespace sfd
