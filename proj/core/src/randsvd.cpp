#include "sfd/randsvd.hpp"

#include <cmath>
#include <stdexcept>

#include "sfd/common.hpp"

namespace sfd {

std::size_t power_iteration_count(std::size_t m, const PowerConfig& cfg) {
    if (cfg.q_override) return *cfg.q_override;
    if (cfg.epsilon <= 0.0 || cfg.epsilon >= 1.0)
        throw std::invalid_argument("power_iteration_count: epsilon must be in (0,1)");
    const double q = cfg.q_constant * std::log(static_cast<double>(std::max<std::size_t>(m, 1)) / cfg.epsilon) / cfg.epsilon;
    return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(q)));
}

DenseMatrix simultaneous_iteration(const SparseBuffer& a, std::size_t k,
                                   const PowerConfig& cfg, Rng& rng) {
    const std::size_t m = a.rows();
    const std::size_t d = a.cols();
    if (k < 1 || k > std::min(m, d))
        throw std::invalid_argument("simultaneous_iteration: k out of range");

    const std::size_t q = power_iteration_count(m, cfg);
    DenseMatrix g = gaussian_matrix(d, k, rng);

    std::vector<double> col(d);
    DenseMatrix y(m, k);
    for (std::size_t j = 0; j < k; ++j) {
        for (std::size_t i = 0; i < d; ++i) col[i] = g(i, j);
        std::vector<double> yc = a.matvec(col);
        for (std::size_t i = 0; i < m; ++i) y(i, j) = yc[i];
    }
    y = orthonormalize(y);

    std::vector<double> ycol(m);
    for (std::size_t sweep = 0; sweep < q; ++sweep) {
        DenseMatrix next(m, k);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t i = 0; i < m; ++i) ycol[i] = y(i, j);
            std::vector<double> w = a.rmatvec(ycol);
            std::vector<double> yc = a.matvec(w);
            for (std::size_t i = 0; i < m; ++i) next(i, j) = yc[i];
        }
        if (!all_finite(next))
            throw numerical_error("simultaneous_iteration: non-finite intermediate");
        y = orthonormalize(next);
    }
    return y;
}

} // namespace sfd
