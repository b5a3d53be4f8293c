#include "sfd/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "sfd/common.hpp"

namespace sfd {

std::size_t SyntheticSpec::head_cols() const {
    const auto h = static_cast<std::size_t>(std::ceil(1.5 * static_cast<double>(z)));
    return std::min(h, d);
}

void SyntheticSpec::validate() const {
    if (d == 0 || z == 0 || z > d) throw std::invalid_argument("SyntheticSpec: requires 1 <= z <= d");
    if (p_head < 0.0 || p_head > 1.0) throw std::invalid_argument("SyntheticSpec: p_head out of range");
}

SyntheticStream::SyntheticStream(const SyntheticSpec& spec) : spec_(spec), rng_(spec.seed) {
    spec.validate();
}

SparseRow SyntheticStream::next() {
    if (!has_next()) throw std::logic_error("SyntheticStream: stream exhausted");
    produced_ += 1;

    const std::size_t head = spec_.head_cols();
    const std::size_t tail = spec_.d - head;
    std::unordered_set<std::size_t> used;
    std::size_t used_head = 0;
    std::size_t used_tail = 0;
    std::vector<std::uint32_t> cols;
    std::vector<double> signs;
    cols.reserve(spec_.z);
    while (cols.size() < spec_.z) {
        // Pick the group once per slot so each entry lands in the head with
        // probability p_head; a full group redirects to the other one.
        bool pick_head = rng_.uniform() < spec_.p_head;
        if (tail == 0 || used_tail == tail) pick_head = true;
        if (used_head == head) pick_head = false;
        std::size_t col;
        do {
            col = pick_head ? rng_.uniform_below(head) : head + rng_.uniform_below(tail);
        } while (!used.insert(col).second); // duplicate column, redraw in group
        (pick_head ? used_head : used_tail) += 1;
        cols.push_back(static_cast<std::uint32_t>(col));
        signs.push_back(rng_.uniform() < 0.5 ? 1.0 : -1.0);
    }

    std::vector<std::size_t> order(cols.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return cols[a] < cols[b]; });
    SparseRow row;
    row.indices.reserve(cols.size());
    row.values.reserve(cols.size());
    for (std::size_t i : order) {
        row.indices.push_back(cols[i]);
        row.values.push_back(signs[i]);
    }
    return row;
}

TailResult exact_tail(const SparseBuffer& a, std::size_t k, Rng& rng) {
    TailResult out;
    if (k == 0) {
        out.tail_sq = a.frob_sq();
        return out;
    }
    const std::size_t m = a.rows();
    const std::size_t d = a.cols();
    if (k > std::min(m, d)) throw std::invalid_argument("exact_tail: k exceeds matrix rank bound");

    const std::size_t block = std::min(k + 10, std::min(m, d));
    DenseMatrix g = gaussian_matrix(d, block, rng);
    std::vector<double> col(d);
    DenseMatrix y(m, block);
    for (std::size_t j = 0; j < block; ++j) {
        for (std::size_t i = 0; i < d; ++i) col[i] = g(i, j);
        std::vector<double> yc = a.matvec(col);
        for (std::size_t i = 0; i < m; ++i) y(i, j) = yc[i];
    }
    y = orthonormalize(y);

    const std::size_t max_sweeps = 1000;
    std::vector<double> prev(k, -1.0);
    double prev_energy = -1.0;
    std::vector<double> ycol(m);
    for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
        // W = A^T Y, Ritz values from W^T W = Y^T A A^T Y.
        DenseMatrix w(d, block);
        DenseMatrix next(m, block);
        for (std::size_t j = 0; j < block; ++j) {
            for (std::size_t i = 0; i < m; ++i) ycol[i] = y(i, j);
            std::vector<double> wc = a.rmatvec(ycol);
            for (std::size_t i = 0; i < d; ++i) w(i, j) = wc[i];
            std::vector<double> yc = a.matvec(wc);
            for (std::size_t i = 0; i < m; ++i) next(i, j) = yc[i];
        }
        DenseMatrix small(block, block);
        for (std::size_t p = 0; p < block; ++p)
            for (std::size_t q = p; q < block; ++q) {
                double s = 0.0;
                for (std::size_t i = 0; i < d; ++i) s += w(i, p) * w(i, q);
                small(p, q) = s;
                small(q, p) = s;
            }
        EighResult eig = jacobi_eigh(small, 1e-14 * std::max(a.frob_sq(), 1.0));
        std::vector<double> est(k);
        for (std::size_t i = 0; i < k; ++i) est[i] = std::sqrt(std::max(eig.values[i], 0.0));

        double change = 0.0;
        for (std::size_t i = 0; i < k; ++i) change = std::max(change, std::abs(est[i] - prev[i]));
        const double scale = std::max(est[0], 1.0);
        double head_energy = 0.0;
        for (double s : est) head_energy += s * s;
        // Per-value convergence stalls when singular values cluster, but the
        // head energy (all the tail needs) still settles; accept either.
        const bool values_done = sweep > 0 && change <= 1e-10 * scale;
        const bool energy_done = sweep >= 30 &&
                                 std::abs(head_energy - prev_energy) <=
                                     1e-9 * std::max(head_energy, 1.0);
        if (values_done || energy_done) {
            out.sigma = est;
            out.tail_sq = std::max(a.frob_sq() - head_energy, 0.0);
            return out;
        }
        prev = est;
        prev_energy = head_energy;
        y = orthonormalize(next);
    }
    throw numerical_error("exact_tail: no convergence within 1000 sweeps");
}

std::optional<double> proj_err(const SparseBuffer& a, const DenseMatrix& sketch,
                               std::size_t k, const TailResult& tail) {
    if (sketch.cols != a.cols()) throw std::invalid_argument("proj_err: dimension mismatch");
    if (k < 1 || k > sketch.rows) throw std::invalid_argument("proj_err: k out of range");
    if (tail.tail_sq < 1e-12 * a.frob_sq()) return std::nullopt; // rank <= k input

    SvdResult svd = svd_top(sketch, k);
    if (svd.singular[0] == 0.0 || svd.singular[k - 1] < 1e-10 * svd.singular[0])
        return std::nullopt; // sketch does not span a k-dimensional subspace

    // Row streaming: |A - A Vk Vk^T|_F^2 = sum_rows |a|^2 - |Vk^T a|^2.
    const auto& offs = a.row_offsets();
    const auto& cols = a.col_indices();
    const auto& vals = a.values();
    double num = 0.0;
    std::vector<double> proj(k);
    for (std::size_t i = 0; i + 1 < offs.size(); ++i) {
        std::fill(proj.begin(), proj.end(), 0.0);
        double row_sq = 0.0;
        for (std::size_t p = offs[i]; p < offs[i + 1]; ++p) {
            const double v = vals[p];
            row_sq += v * v;
            const std::uint32_t j = cols[p];
            for (std::size_t t = 0; t < k; ++t) proj[t] += svd.right(j, t) * v;
        }
        double proj_sq = 0.0;
        for (double v : proj) proj_sq += v * v;
        num += row_sq - proj_sq;
    }
    return std::max(num, 0.0) / tail.tail_sq;
}

double cov_err(const SparseBuffer& a, const DenseMatrix& sketch, Rng& rng,
               std::size_t iterations) {
    if (sketch.cols != a.cols()) throw std::invalid_argument("cov_err: dimension mismatch");
    const double fsq = a.frob_sq();
    if (fsq == 0.0) return 0.0;
    SymOp diff = [&](const std::vector<double>& x) {
        std::vector<double> ata = a.rmatvec(a.matvec(x));
        std::vector<double> btb = tmatvec(sketch, matvec(sketch, x));
        for (std::size_t i = 0; i < ata.size(); ++i) ata[i] -= btb[i];
        return ata;
    };
    return spectral_norm_sym(diff, a.cols(), iterations, rng) / fsq;
}

MetricsRow timed_run(const std::string& algo, const SparseBuffer& a,
                     const SketchConfig& cfg, std::size_t k, std::size_t z,
                     const TailResult* tail_cache) {
    MetricsRow row;
    row.algo = algo;
    row.n = a.rows();
    row.d = a.cols();
    row.ell = cfg.ell;
    row.z = z;
    row.k = k;
    row.seed = cfg.seed;

    const auto& offs = a.row_offsets();
    const auto& cols = a.col_indices();
    const auto& vals = a.values();

    DenseMatrix sketch;
    const auto start = std::chrono::steady_clock::now();
    if (algo == "fd") {
        FdSketcher fd(cfg.ell, cfg.d);
        std::vector<double> dense(cfg.d, 0.0);
        for (std::size_t i = 0; i + 1 < offs.size(); ++i) {
            std::fill(dense.begin(), dense.end(), 0.0);
            for (std::size_t p = offs[i]; p < offs[i + 1]; ++p) dense[cols[p]] = vals[p];
            fd.append(dense);
        }
        sketch = fd.finalize();
    } else if (algo == "sfd") {
        SfdSketcher sfd(cfg);
        SparseRow r;
        for (std::size_t i = 0; i + 1 < offs.size(); ++i) {
            r.indices.assign(cols.begin() + offs[i], cols.begin() + offs[i + 1]);
            r.values.assign(vals.begin() + offs[i], vals.begin() + offs[i + 1]);
            sfd.append(r);
        }
        sketch = sfd.finalize();
    } else {
        throw std::invalid_argument("timed_run: unknown algorithm tag '" + algo + "'");
    }
    const auto stop = std::chrono::steady_clock::now();
    row.wall_seconds = std::chrono::duration<double>(stop - start).count();

    Rng metrics_rng(cfg.seed ^ 0x9e3779b97f4a7c15ULL);
    TailResult tail;
    if (tail_cache != nullptr) {
        tail = *tail_cache;
    } else {
        tail = exact_tail(a, k, metrics_rng);
    }
    if (k >= 1) row.proj_err = proj_err(a, sketch, k, tail);
    row.cov_err = cov_err(a, sketch, metrics_rng);
    return row;
}

} // namespace sfd
