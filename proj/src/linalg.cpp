#include "noisylabels/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "noisylabels/errors.hpp"

namespace noisylabels {

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Vec Matrix::apply(const Vec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("Matrix::apply: size mismatch");
    Vec out(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out[i] += (*this)(i, j) * v[j];
    return out;
}

Matrix Matrix::multiply(const Matrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix::multiply: size mismatch");
    Matrix out(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            double v = (*this)(i, k);
            if (v == 0.0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) out(i, j) += v * o(k, j);
        }
    return out;
}

Matrix Matrix::transpose() const {
    Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

namespace {

// LU with partial pivoting; returns number of row swaps, or -1 if a zero
// pivot was hit (exactly singular).
int lu_factor(Matrix& m, std::vector<std::size_t>& piv) {
    const std::size_t n = m.rows();
    piv.resize(n);
    for (std::size_t i = 0; i < n; ++i) piv[i] = i;
    int swaps = 0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t best = k;
        double best_abs = std::abs(m(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            if (std::abs(m(i, k)) > best_abs) {
                best_abs = std::abs(m(i, k));
                best = i;
            }
        }
        if (best != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(best, j));
            std::swap(piv[k], piv[best]);
            ++swaps;
        }
        if (m(k, k) == 0.0) return -1;
        for (std::size_t i = k + 1; i < n; ++i) {
            double f = m(i, k) / m(k, k);
            m(i, k) = f;
            for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return swaps;
}

}  // namespace

double lu_determinant(const Matrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("lu_determinant: matrix not square");
    Matrix lu = m;
    std::vector<std::size_t> piv;
    int swaps = lu_factor(lu, piv);
    if (swaps < 0) return 0.0;
    double det = (swaps % 2 == 0) ? 1.0 : -1.0;
    for (std::size_t i = 0; i < m.rows(); ++i) det *= lu(i, i);
    return det;
}

Vec lu_solve(const Matrix& m, const Vec& b, double sing_tol) {
    if (m.rows() != m.cols() || b.size() != m.rows())
        throw std::invalid_argument("lu_solve: size mismatch");
    const std::size_t n = m.rows();
    double det = lu_determinant(m);
    if (std::abs(det) <= sing_tol)
        throw SingularMatrix("lu_solve: matrix is singular (|det| = " + std::to_string(std::abs(det)) + ")");

    Matrix lu = m;
    std::vector<std::size_t> piv;
    lu_factor(lu, piv);

    Vec x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = b[piv[i]];
    // forward substitution (unit lower triangle)
    for (std::size_t i = 1; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
    // back substitution
    for (std::size_t ii = n; ii-- > 0;) {
        for (std::size_t j = ii + 1; j < n; ++j) x[ii] -= lu(ii, j) * x[j];
        x[ii] /= lu(ii, ii);
    }
    return x;
}

}  // namespace noisylabels
