#include "sfd/la_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "sfd/common.hpp"

namespace sfd {

namespace {

double off_diag_norm_sq(const DenseMatrix& s) {
    double acc = 0.0;
    for (std::size_t i = 0; i < s.rows; ++i)
        for (std::size_t j = 0; j < s.cols; ++j)
            if (i != j) acc += s(i, j) * s(i, j);
    return acc;
}

} // namespace

EighResult jacobi_eigh(const DenseMatrix& sym, double off_tol) {
    if (sym.rows != sym.cols) throw std::invalid_argument("jacobi_eigh: matrix not square");
    const std::size_t n = sym.rows;
    DenseMatrix s = sym;
    DenseMatrix v = DenseMatrix::identity(n);

    const double tol_sq = off_tol * off_tol;
    const std::size_t max_sweeps = 100;
    std::size_t sweep = 0;
    while (off_diag_norm_sq(s) > tol_sq && n > 1) {
        if (++sweep > max_sweeps)
            throw numerical_error("jacobi_eigh: no convergence after 100 sweeps");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = s(p, q);
                if (apq == 0.0) continue;
                const double theta = (s(q, q) - s(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (std::size_t i = 0; i < n; ++i) {
                    const double sip = s(i, p);
                    const double siq = s(i, q);
                    s(i, p) = c * sip - sn * siq;
                    s(i, q) = sn * sip + c * siq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const double spj = s(p, j);
                    const double sqj = s(q, j);
                    s(p, j) = c * spj - sn * sqj;
                    s(q, j) = sn * spj + c * sqj;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = c * vip - sn * viq;
                    v(i, q) = sn * vip + c * viq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s(a, a) > s(b, b); });

    EighResult out;
    out.values.resize(n);
    out.vectors = DenseMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = s(order[k], order[k]);
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

SvdResult svd_top(const DenseMatrix& a, std::size_t r) {
    if (a.rows > a.cols) throw std::invalid_argument("svd_top: expects m <= d");
    if (r < 1 || r > a.rows) throw std::invalid_argument("svd_top: rank out of range");
    if (!all_finite(a)) throw std::invalid_argument("svd_top: non-finite input");

    const std::size_t m = a.rows;
    const std::size_t d = a.cols;

    DenseMatrix gram(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const double* ri = a.row_ptr(i);
        for (std::size_t j = i; j < m; ++j) {
            const double* rj = a.row_ptr(j);
            double s = 0.0;
            for (std::size_t t = 0; t < d; ++t) s += ri[t] * rj[t];
            gram(i, j) = s;
            gram(j, i) = s;
        }
    }
    const double fsq = frob_sq(a);

    EighResult eig = jacobi_eigh(gram, 1e-12 * std::max(fsq, 1.0));

    SvdResult out;
    out.left = DenseMatrix(m, r);
    out.right = DenseMatrix(d, r);
    out.singular.resize(r);
    for (std::size_t k = 0; k < r; ++k) {
        out.singular[k] = std::sqrt(std::max(eig.values[k], 0.0));
        for (std::size_t i = 0; i < m; ++i) out.left(i, k) = eig.vectors(i, k);
    }
    const double cutoff = 1e-10 * out.singular[0];
    for (std::size_t k = 0; k < r; ++k) {
        if (out.singular[k] < cutoff || out.singular[k] == 0.0) {
            out.rank_deficient = true;
            continue; // right column stays zero
        }
        // v_k = A^T u_k / s_k
        for (std::size_t i = 0; i < m; ++i) {
            const double w = out.left(i, k) / out.singular[k];
            if (w == 0.0) continue;
            const double* ri = a.row_ptr(i);
            for (std::size_t t = 0; t < d; ++t) out.right(t, k) += w * ri[t];
        }
    }
    return out;
}

DenseMatrix orthonormalize(const DenseMatrix& m) {
    if (m.rows < m.cols) throw std::invalid_argument("orthonormalize: needs n >= k");
    const std::size_t n = m.rows;
    const std::size_t k = m.cols;

    double max_norm = 0.0;
    for (std::size_t j = 0; j < k; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += m(i, j) * m(i, j);
        max_norm = std::max(max_norm, std::sqrt(s));
    }
    const double drop_tol = 1e-12 * max_norm;

    DenseMatrix q = m;
    auto col_dot = [&](std::size_t a, std::size_t b) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += q(i, a) * q(i, b);
        return s;
    };
    for (std::size_t j = 0; j < k; ++j) {
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t p = 0; p < j; ++p) {
                const double proj = col_dot(p, j);
                if (proj == 0.0) continue;
                for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, p);
            }
        }
        const double norm = std::sqrt(col_dot(j, j));
        if (norm < drop_tol || norm == 0.0) {
            for (std::size_t i = 0; i < n; ++i) q(i, j) = 0.0;
        } else {
            for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
        }
    }
    return q;
}

DenseMatrix gaussian_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("gaussian_matrix: empty shape");
    DenseMatrix g(rows, cols);
    for (double& v : g.data) v = rng.normal();
    return g;
}

std::vector<double> unit_sphere_vector(std::size_t d, Rng& rng) {
    if (d < 1) throw std::invalid_argument("unit_sphere_vector: d must be positive");
    std::vector<double> x(d);
    while (true) {
        double nrm_sq = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            x[i] = rng.normal();
            nrm_sq += x[i] * x[i];
        }
        if (nrm_sq > 0.0) {
            const double inv = 1.0 / std::sqrt(nrm_sq);
            for (double& v : x) v *= inv;
            return x;
        }
    }
}

double spectral_norm_sym(const SymOp& apply, std::size_t d, std::size_t iterations, Rng& rng) {
    if (iterations < 1) throw std::invalid_argument("spectral_norm_sym: iterations must be >= 1");
    std::vector<double> x = unit_sphere_vector(d, rng);
    double rayleigh = 0.0;
    for (std::size_t it = 0; it < iterations; ++it) {
        std::vector<double> y = apply(x);
        if (y.size() != d) throw std::invalid_argument("spectral_norm_sym: operator size mismatch");
        double dot = 0.0;
        double nrm_sq = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            if (!std::isfinite(y[i])) throw numerical_error("spectral_norm_sym: non-finite operator output");
            dot += x[i] * y[i];
            nrm_sq += y[i] * y[i];
        }
        rayleigh = dot;
        if (nrm_sq == 0.0) return 0.0; // operator annihilated the iterate
        const double inv = 1.0 / std::sqrt(nrm_sq);
        for (std::size_t i = 0; i < d; ++i) x[i] = y[i] * inv;
    }
    return rayleigh;
}

} // namespace sfd
