#pragma once

#include <cstdint>
#include <vector>

#include "sfd/dense_matrix.hpp"

namespace sfd {

// One streamed row: strictly increasing column indices with matching values.
// Stored zeros are legal and count toward nnz.
struct SparseRow {
    std::vector<std::uint32_t> indices;
    std::vector<double> values;
};

// CSR accumulation buffer for streamed rows. Maintains nnz and the running
// squared Frobenius norm incrementally.
class SparseBuffer {
  public:
    explicit SparseBuffer(std::size_t d) : d_(d) { row_offsets_.push_back(0); }

    std::size_t cols() const { return d_; }
    std::size_t rows() const { return row_offsets_.size() - 1; }
    std::size_t nnz() const { return values_.size(); }
    double frob_sq() const { return frob_sq_; }
    bool empty() const { return rows() == 0; }

    // Validates ordering and range before appending.
    void append_row(const SparseRow& row);

    void clear();

    // y = A' x, touching stored entries only.
    std::vector<double> matvec(const std::vector<double>& x) const;

    // x = A'^T y.
    std::vector<double> rmatvec(const std::vector<double>& y) const;

    // Column-sparse product P = Z^T A' where Z has rows() rows; P is
    // (Z.cols) x d and costs O(nnz * Z.cols).
    DenseMatrix project_rows(const DenseMatrix& z) const;

    DenseMatrix densify(std::size_t nnz_cap) const;

    // Raw CSR access for the iteration kernels.
    const std::vector<std::size_t>& row_offsets() const { return row_offsets_; }
    const std::vector<std::uint32_t>& col_indices() const { return col_indices_; }
    const std::vector<double>& values() const { return values_; }

  private:
    std::size_t d_;
    std::vector<std::size_t> row_offsets_;
    std::vector<std::uint32_t> col_indices_;
    std::vector<double> values_;
    double frob_sq_ = 0.0;
};

} // namespace sfd
