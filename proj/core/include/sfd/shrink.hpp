#pragma once

#include "sfd/la_core.hpp"
#include "sfd/randsvd.hpp"
#include "sfd/sparse.hpp"

namespace sfd {

// Persistent across all verifications of one sketch run; the per-call
// budgets delta_i = delta / (2 i^2) sum below delta.
struct VerifierState {
    std::size_t i = 0;
    double delta = 0.1;
    double c_verify = 2.0;
    double delta_spent = 0.0; // sum of delta_i actually consumed
};

struct ShrinkReport {
    DenseMatrix b;          // l x d
    double delta_hat = 0.0; // (|A'|_F^2 - |B'|_F^2) / (alpha * l)
    std::size_t attempts = 0;
};

// Exact-SVD shrink: subtract the l-th squared singular value from every
// retained direction. Row l of the result is always zero.
DenseMatrix dense_shrink(const DenseMatrix& a, std::size_t ell);

// Randomized shrink: subspace iteration basis Z, P = Z^T A', then the same
// singular value subtraction on P.
DenseMatrix sparse_shrink(const SparseBuffer& a, std::size_t ell,
                          const PowerConfig& cfg, Rng& rng);

// Power-method check that the PSD operator has norm <= 1. Magnitude is
// tracked in log domain; iterates are renormalized every step.
bool verify_spectral(const SymOp& apply, std::size_t d, VerifierState& state, Rng& rng);

// Retries sparse_shrink until verify_spectral accepts the scaled difference
// operator (A'^T A' - B'^T B') / (Delta / 2). Exact recovery (Delta = 0)
// returns without verification.
ShrinkReport boosted_sparse_shrink(const SparseBuffer& a, std::size_t ell,
                                   VerifierState& state, const PowerConfig& cfg, Rng& rng);

} // namespace sfd
