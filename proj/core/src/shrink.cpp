#include "sfd/shrink.hpp"

#include <cmath>
#include <stdexcept>

#include "sfd/common.hpp"

namespace sfd {

namespace {

constexpr std::size_t kRetryCap = 64;

// B row i = sqrt(max(s_i^2 - s_l^2, 0)) * v_i^T.
DenseMatrix shrink_from_factors(const std::vector<double>& singular,
                                const DenseMatrix& right, std::size_t ell) {
    const std::size_t d = right.rows;
    const double floor_sq = singular[ell - 1] * singular[ell - 1];
    DenseMatrix b(ell, d);
    for (std::size_t i = 0; i < ell; ++i) {
        const double shrunk = std::sqrt(std::max(singular[i] * singular[i] - floor_sq, 0.0));
        if (shrunk == 0.0) continue;
        for (std::size_t j = 0; j < d; ++j) b(i, j) = shrunk * right(j, i);
    }
    return b;
}

} // namespace

DenseMatrix dense_shrink(const DenseMatrix& a, std::size_t ell) {
    if (ell < 1 || ell > a.rows) throw std::invalid_argument("dense_shrink: ell out of range");
    if (!all_finite(a)) throw std::invalid_argument("dense_shrink: non-finite input");

    if (a.rows <= a.cols) {
        SvdResult svd = svd_top(a, ell);
        return shrink_from_factors(svd.singular, svd.right, ell);
    }

    // Tall case: eigendecompose the d x d Gram A^T A, which yields the right
    // vectors directly.
    if (ell > a.cols) throw std::invalid_argument("dense_shrink: ell exceeds column count");
    const std::size_t d = a.cols;
    DenseMatrix gram(d, d);
    for (std::size_t i = 0; i < a.rows; ++i) {
        const double* r = a.row_ptr(i);
        for (std::size_t p = 0; p < d; ++p) {
            if (r[p] == 0.0) continue;
            for (std::size_t q = p; q < d; ++q) gram(p, q) += r[p] * r[q];
        }
    }
    for (std::size_t p = 0; p < d; ++p)
        for (std::size_t q = 0; q < p; ++q) gram(p, q) = gram(q, p);
    EighResult eig = jacobi_eigh(gram, 1e-12 * std::max(frob_sq(a), 1.0));
    std::vector<double> singular(ell);
    DenseMatrix right(d, ell);
    for (std::size_t k = 0; k < ell; ++k) {
        singular[k] = std::sqrt(std::max(eig.values[k], 0.0));
        for (std::size_t j = 0; j < d; ++j) right(j, k) = eig.vectors(j, k);
    }
    return shrink_from_factors(singular, right, ell);
}

DenseMatrix sparse_shrink(const SparseBuffer& a, std::size_t ell,
                          const PowerConfig& cfg, Rng& rng) {
    if (ell < 1 || ell > a.rows()) throw std::invalid_argument("sparse_shrink: ell out of range");
    if (ell > a.cols()) throw std::invalid_argument("sparse_shrink: ell exceeds column count");

    DenseMatrix z = simultaneous_iteration(a, ell, cfg, rng);
    DenseMatrix p = a.project_rows(z); // ell x d, O(nnz * ell)
    if (!all_finite(p)) throw numerical_error("sparse_shrink: non-finite projection");
    SvdResult svd = svd_top(p, ell); // left factor is discarded
    return shrink_from_factors(svd.singular, svd.right, ell);
}

bool verify_spectral(const SymOp& apply, std::size_t d, VerifierState& state, Rng& rng) {
    state.i += 1;
    const double di = static_cast<double>(state.i);
    const double delta_i = state.delta / (2.0 * di * di);
    state.delta_spent += delta_i;

    const std::size_t steps = static_cast<std::size_t>(
        std::ceil(state.c_verify * std::log2(static_cast<double>(d) / delta_i)));

    std::vector<double> x = unit_sphere_vector(d, rng);
    double log_mag = 0.0;
    for (std::size_t t = 0; t < steps; ++t) {
        std::vector<double> y = apply(x);
        double nrm_sq = 0.0;
        for (double v : y) {
            if (!std::isfinite(v)) throw numerical_error("verify_spectral: non-finite operator output");
            nrm_sq += v * v;
        }
        if (nrm_sq == 0.0) return true; // iterate annihilated, norm estimate 0
        const double nrm = std::sqrt(nrm_sq);
        log_mag += std::log(nrm);
        // Growth ratios of a PSD power iteration are nondecreasing, so once
        // the magnitude passes 1 while still growing the outcome is fixed.
        if (log_mag > 0.0 && nrm >= 1.0) return false;
        for (std::size_t i = 0; i < d; ++i) x[i] = y[i] / nrm;
    }
    return log_mag <= 0.0;
}

ShrinkReport boosted_sparse_shrink(const SparseBuffer& a, std::size_t ell,
                                   VerifierState& state, const PowerConfig& cfg, Rng& rng) {
    if (ell < 1 || ell > a.rows())
        throw std::invalid_argument("boosted_sparse_shrink: ell out of range");

    const double a_fsq = a.frob_sq();
    for (std::size_t attempt = 1; attempt <= kRetryCap; ++attempt) {
        DenseMatrix b = sparse_shrink(a, ell, cfg, rng);
        const double drop = a_fsq - frob_sq(b);
        const double delta_hat = drop / (kAlpha * static_cast<double>(ell));

        if (drop <= 1e-12 * a_fsq) {
            // Exact recovery (rank < ell): nothing to verify, Delta = 0.
            return {std::move(b), 0.0, attempt};
        }

        const double scale = 2.0 / delta_hat;
        SymOp diff_op = [&](const std::vector<double>& x) {
            std::vector<double> ata = a.rmatvec(a.matvec(x));
            std::vector<double> btb = tmatvec(b, matvec(b, x));
            for (std::size_t i = 0; i < ata.size(); ++i) ata[i] = scale * (ata[i] - btb[i]);
            return ata;
        };
        if (verify_spectral(diff_op, a.cols(), state, rng))
            return {std::move(b), delta_hat, attempt};
    }
    throw numerical_error("boosted_sparse_shrink: retry cap exceeded");
}

} // namespace sfd
