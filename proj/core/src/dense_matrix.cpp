#include "sfd/dense_matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace sfd {

double frob_sq(const DenseMatrix& m) {
    double s = 0.0;
    for (double v : m.data) s += v * v;
    return s;
}

bool all_finite(const DenseMatrix& m) {
    for (double v : m.data)
        if (!std::isfinite(v)) return false;
    return true;
}

DenseMatrix vstack(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.cols && a.rows != 0 && b.rows != 0)
        throw std::invalid_argument("vstack: column mismatch");
    std::size_t cols = a.rows != 0 ? a.cols : b.cols;
    DenseMatrix out(a.rows + b.rows, cols);
    std::copy(a.data.begin(), a.data.end(), out.data.begin());
    std::copy(b.data.begin(), b.data.end(), out.data.begin() + a.data.size());
    return out;
}

std::vector<double> matvec(const DenseMatrix& m, const std::vector<double>& x) {
    if (x.size() != m.cols) throw std::invalid_argument("matvec: dimension mismatch");
    std::vector<double> y(m.rows, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double* r = m.row_ptr(i);
        double s = 0.0;
        for (std::size_t j = 0; j < m.cols; ++j) s += r[j] * x[j];
        y[i] = s;
    }
    return y;
}

std::vector<double> tmatvec(const DenseMatrix& m, const std::vector<double>& y) {
    if (y.size() != m.rows) throw std::invalid_argument("tmatvec: dimension mismatch");
    std::vector<double> x(m.cols, 0.0);
    for (std::size_t i = 0; i < m.rows; ++i) {
        const double* r = m.row_ptr(i);
        const double yi = y[i];
        if (yi == 0.0) continue;
        for (std::size_t j = 0; j < m.cols; ++j) x[j] += yi * r[j];
    }
    return x;
}

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols != b.rows) throw std::invalid_argument("matmul: dimension mismatch");
    DenseMatrix c(a.rows, b.cols);
    for (std::size_t i = 0; i < a.rows; ++i) {
        for (std::size_t k = 0; k < a.cols; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            const double* br = b.row_ptr(k);
            double* cr = c.row_ptr(i);
            for (std::size_t j = 0; j < b.cols; ++j) cr[j] += aik * br[j];
        }
    }
    return c;
}

DenseMatrix transpose(const DenseMatrix& m) {
    DenseMatrix t(m.cols, m.rows);
    for (std::size_t i = 0; i < m.rows; ++i)
        for (std::size_t j = 0; j < m.cols; ++j) t(j, i) = m(i, j);
    return t;
}

} // namespace sfd
