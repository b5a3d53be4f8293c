#include "sfd/sketch.hpp"

#include <stdexcept>

#include "sfd/common.hpp"

namespace sfd {

void SketchConfig::validate() const {
    if (ell < 1 || ell > d) throw std::invalid_argument("SketchConfig: requires 1 <= ell <= d");
    if (delta <= 0.0 || delta >= 1.0) throw std::invalid_argument("SketchConfig: delta must be in (0,1)");
}

SfdSketcher::SfdSketcher(const SketchConfig& cfg)
    : cfg_(cfg), b_(cfg.ell, cfg.d), buffer_(cfg.d), rng_(cfg.seed) {
    cfg.validate();
    verifier_.delta = cfg.delta;
}

void SfdSketcher::append(const SparseRow& row) {
    buffer_.append_row(row);
    if (buffer_.nnz() >= cfg_.ell * cfg_.d || buffer_.rows() == cfg_.d) flush();
}

void SfdSketcher::flush() {
    // Either trigger implies rows >= ell, so sparse_shrink's precondition holds.
    ShrinkReport report = boosted_sparse_shrink(buffer_, cfg_.ell, verifier_, cfg_.power, rng_);
    b_ = dense_shrink(vstack(b_, report.b), cfg_.ell);
    buffer_.clear();
    flush_count_ += 1;
    attempt_total_ += report.attempts;
}

DenseMatrix SfdSketcher::finalize() {
    if (!buffer_.empty()) {
        if (buffer_.rows() >= cfg_.ell) {
            flush();
        } else {
            DenseMatrix tail = buffer_.densify(cfg_.ell * cfg_.d);
            b_ = dense_shrink(vstack(b_, tail), cfg_.ell);
            buffer_.clear();
        }
    }
    return b_;
}

FdSketcher::FdSketcher(std::size_t ell, std::size_t d)
    : ell_(ell), d_(d), work_(2 * ell, d) {
    if (ell < 1 || ell > d) throw std::invalid_argument("FdSketcher: requires 1 <= ell <= d");
}

void FdSketcher::append(const std::vector<double>& row) {
    if (row.size() != d_) throw std::invalid_argument("FdSketcher: row dimension mismatch");
    std::copy(row.begin(), row.end(), work_.row_ptr(fill_));
    fill_ += 1;
    if (fill_ == 2 * ell_) {
        DenseMatrix shrunk = dense_shrink(work_, ell_);
        work_ = DenseMatrix(2 * ell_, d_);
        std::copy(shrunk.data.begin(), shrunk.data.end(), work_.data.begin());
        fill_ = ell_;
        shrink_count_ += 1;
    }
}

DenseMatrix FdSketcher::finalize() {
    if (fill_ > ell_) {
        DenseMatrix live(fill_, d_);
        std::copy(work_.data.begin(), work_.data.begin() + fill_ * d_, live.data.begin());
        DenseMatrix shrunk = dense_shrink(live, ell_);
        work_ = DenseMatrix(2 * ell_, d_);
        std::copy(shrunk.data.begin(), shrunk.data.end(), work_.data.begin());
        fill_ = ell_;
        shrink_count_ += 1;
    }
    DenseMatrix out(ell_, d_);
    std::copy(work_.data.begin(), work_.data.begin() + ell_ * d_, out.data.begin());
    return out;
}

DenseMatrix merge(const DenseMatrix& b1, const DenseMatrix& b2, std::size_t ell) {
    if (b1.cols != b2.cols) throw std::invalid_argument("merge: column mismatch");
    return dense_shrink(vstack(b1, b2), ell);
}

} // namespace sfd
