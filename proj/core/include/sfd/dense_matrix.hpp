#pragma once

#include <cstddef>
#include <vector>

namespace sfd {

// Row-major dense matrix. Used for sketches, projections and all the small
// factors; never for the streamed input itself.
struct DenseMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // rows * cols entries, row-major

    DenseMatrix() = default;
    DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

    double* row_ptr(std::size_t i) { return data.data() + i * cols; }
    const double* row_ptr(std::size_t i) const { return data.data() + i * cols; }

    static DenseMatrix zeros(std::size_t r, std::size_t c) { return DenseMatrix(r, c); }
    static DenseMatrix identity(std::size_t n) {
        DenseMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
};

double frob_sq(const DenseMatrix& m);
bool all_finite(const DenseMatrix& m);

// [a; b] vertical stack, matching column counts required.
DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b);

// Dense products used by the shrink/merge paths (all operands are small).
std::vector<double> matvec(const DenseMatrix& m, const std::vector<double>& x);
std::vector<double> tmatvec(const DenseMatrix& m, const std::vector<double>& y);
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix transpose(const DenseMatrix& m);

} // namespace sfd
