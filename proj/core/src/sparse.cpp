#include "sfd/sparse.hpp"

#include <cmath>
#include <stdexcept>

namespace sfd {

void SparseBuffer::append_row(const SparseRow& row) {
    if (row.indices.size() != row.values.size())
        throw std::invalid_argument("append_row: index/value length mismatch");
    for (std::size_t k = 0; k < row.indices.size(); ++k) {
        if (row.indices[k] >= d_)
            throw std::invalid_argument("append_row: column index out of range");
        if (k > 0 && row.indices[k] <= row.indices[k - 1])
            throw std::invalid_argument("append_row: indices must be strictly increasing");
        if (!std::isfinite(row.values[k]))
            throw std::invalid_argument("append_row: non-finite value");
    }
    col_indices_.insert(col_indices_.end(), row.indices.begin(), row.indices.end());
    values_.insert(values_.end(), row.values.begin(), row.values.end());
    row_offsets_.push_back(values_.size());
    for (double v : row.values) frob_sq_ += v * v;
}

void SparseBuffer::clear() {
    row_offsets_.assign(1, 0);
    col_indices_.clear();
    values_.clear();
    frob_sq_ = 0.0;
}

std::vector<double> SparseBuffer::matvec(const std::vector<double>& x) const {
    if (x.size() != d_) throw std::invalid_argument("matvec: dimension mismatch");
    const std::size_t m = rows();
    std::vector<double> y(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double s = 0.0;
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
            s += values_[k] * x[col_indices_[k]];
        y[i] = s;
    }
    return y;
}

std::vector<double> SparseBuffer::rmatvec(const std::vector<double>& y) const {
    if (y.size() != rows()) throw std::invalid_argument("rmatvec: dimension mismatch");
    std::vector<double> x(d_, 0.0);
    for (std::size_t i = 0; i < rows(); ++i) {
        const double yi = y[i];
        if (yi == 0.0) continue;
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
            x[col_indices_[k]] += yi * values_[k];
    }
    return x;
}

DenseMatrix SparseBuffer::project_rows(const DenseMatrix& z) const {
    if (z.rows != rows()) throw std::invalid_argument("project_rows: row mismatch");
    DenseMatrix p(z.cols, d_);
    for (std::size_t i = 0; i < rows(); ++i) {
        const double* zr = z.row_ptr(i);
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k) {
            const double v = values_[k];
            const std::uint32_t j = col_indices_[k];
            for (std::size_t t = 0; t < z.cols; ++t) p(t, j) += zr[t] * v;
        }
    }
    return p;
}

DenseMatrix SparseBuffer::densify(std::size_t nnz_cap) const {
    if (nnz() > nnz_cap) throw std::invalid_argument("densify: nnz cap exceeded");
    DenseMatrix out(rows(), d_);
    for (std::size_t i = 0; i < rows(); ++i)
        for (std::size_t k = row_offsets_[i]; k < row_offsets_[i + 1]; ++k)
            out(i, col_indices_[k]) = values_[k];
    return out;
}

} // namespace sfd
