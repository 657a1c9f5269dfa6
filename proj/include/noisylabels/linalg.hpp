#pragma once

#include <cstddef>
#include <vector>

namespace noisylabels {

using Vec = std::vector<double>;

// Small dense row-major matrix. Everything in this library is K x K with
// K <= 10, so there is no need for anything fancier.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    const std::vector<double>& data() const { return a_; }

    Vec apply(const Vec& v) const;          // this * v
    Matrix multiply(const Matrix& o) const;  // this * o
    Matrix transpose() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

// Determinant via LU with partial pivoting.
double lu_determinant(const Matrix& m);

// Solve m x = b; throws SingularMatrix if |det| <= sing_tol.
Vec lu_solve(const Matrix& m, const Vec& b, double sing_tol = 1e-12);

}  // namespace noisylabels
