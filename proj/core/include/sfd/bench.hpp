#pragma once

#include <optional>
#include <string>

#include "sfd/sketch.hpp"

namespace sfd {

// Synthetic row distribution: exactly z distinct nonzero columns per row,
// values +-1, with the first ceil(1.5 z) "head" columns picked with
// probability 0.9 per slot.
struct SyntheticSpec {
    std::size_t n = 0;
    std::size_t d = 0;
    std::size_t z = 0;
    double p_head = 0.9;
    std::uint64_t seed = 0;

    std::size_t head_cols() const;
    void validate() const;
};

class SyntheticStream {
  public:
    explicit SyntheticStream(const SyntheticSpec& spec);

    bool has_next() const { return produced_ < spec_.n; }
    SparseRow next();

  private:
    SyntheticSpec spec_;
    Rng rng_;
    std::size_t produced_ = 0;
};

struct MetricsRow {
    std::string algo;
    std::size_t n = 0, d = 0, ell = 0, z = 0, k = 0;
    std::optional<double> proj_err; // empty = degenerate (flagged) case
    double cov_err = 0.0;
    double wall_seconds = 0.0;
    std::uint64_t seed = 0;
};

struct TailResult {
    double tail_sq = 0.0;         // |A - A_k|_F^2
    std::vector<double> sigma;    // top-k singular values
};

// Ground-truth tail energy via high-effort block iteration (k+10 block
// columns, up to 1000 sweeps; converges on successive estimates at relative
// 1e-10 per value, or 1e-9 on the head energy when values cluster). Throws
// numerical_error on non-convergence.
TailResult exact_tail(const SparseBuffer& a, std::size_t k, Rng& rng);

// |A - A V_k V_k^T|_F^2 / |A - A_k|_F^2 with V_k from the sketch. Empty
// when the denominator vanishes or the sketch has rank < k.
std::optional<double> proj_err(const SparseBuffer& a, const DenseMatrix& sketch,
                               std::size_t k, const TailResult& tail);

// |A^T A - B^T B|_2 / |A|_F^2 via power iteration on the difference operator.
double cov_err(const SparseBuffer& a, const DenseMatrix& sketch, Rng& rng,
               std::size_t iterations = 1000);

// Runs one algorithm over the rows of `a` (timed), then evaluates both error
// metrics (untimed). algo is "fd" or "sfd". Pass a precomputed tail to avoid
// recomputing the oracle per algorithm.
MetricsRow timed_run(const std::string& algo, const SparseBuffer& a,
                     const SketchConfig& cfg, std::size_t k, std::size_t z,
                     const TailResult* tail_cache = nullptr);

} // namespace sfd
