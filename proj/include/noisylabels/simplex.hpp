#pragma once

#include <cstddef>
#include <vector>

#include "noisylabels/linalg.hpp"

namespace noisylabels {

inline constexpr double kSimplexTol = 1e-9;
inline constexpr double kNegClampTol = 1e-12;
inline constexpr double kSingularTol = 1e-12;
inline constexpr double kResidualTol = 1e-10;

// Probability vector over K classes: entries >= 0, mass 1 within tolerance.
class SimplexVector {
public:
    const Vec& probs() const { return probs_; }
    std::size_t size() const { return probs_.size(); }
    double operator[](std::size_t i) const { return probs_[i]; }

    static SimplexVector uniform(std::size_t k);

    friend SimplexVector validate_simplex(Vec v, double tol);

private:
    explicit SimplexVector(Vec v) : probs_(std::move(v)) {}
    Vec probs_;
};

// Throws NegativeEntry / MassNotOne, naming the offending index or deviation.
SimplexVector validate_simplex(Vec v, double tol = kSimplexTol);

// Column-stochastic K x K matrix; entries[y'][y] = eps(y', y) = P(Y'=y' | Y=y).
// Column index is the TRUE class. Entries in [-1e-12, ...) are clamped to 0.
class StochasticMatrix {
public:
    const Matrix& matrix() const { return m_; }
    std::size_t size() const { return m_.rows(); }
    double operator()(std::size_t yprime, std::size_t y) const { return m_(yprime, y); }

    friend StochasticMatrix validate_stochastic(Matrix m, double tol);

private:
    explicit StochasticMatrix(Matrix m) : m_(std::move(m)) {}
    Matrix m_;
};

StochasticMatrix validate_stochastic(Matrix m, double tol = kSimplexTol);

double matrix_determinant(const StochasticMatrix& e);

// Solve E x = b. Residual is checked against kResidualTol.
Vec solve_linear(const StochasticMatrix& e, const Vec& b);

// Bijection on {0, ..., K-1} together with its parity.
class PermutationMatrix {
public:
    // perm[j] = image of column j: the matrix has column j equal to e_{perm[j]}.
    explicit PermutationMatrix(std::vector<std::size_t> perm);

    // The canonical even permutation [e_2, e_3, e_1, e_4, ..., e_K], 0-indexed:
    // columns (1, 2, 0, 3, 4, ...).
    static PermutationMatrix cycle_first_three(std::size_t k);

    std::size_t size() const { return perm_.size(); }
    const std::vector<std::size_t>& perm() const { return perm_; }
    bool is_even() const { return even_; }
    int sign() const { return even_ ? 1 : -1; }

    Matrix to_matrix() const;
    PermutationMatrix inverse() const;

private:
    std::vector<std::size_t> perm_;
    bool even_;
};

// Finite joint distribution over (X, Y, Y') with |X| <= 64, K <= 10. Exists
// as a brute-force oracle, not as a container for real data.
class DiscreteJoint {
public:
    DiscreteJoint(std::size_t nx, std::size_t k, Vec table, double tol = kSimplexTol);

    std::size_t nx() const { return nx_; }
    std::size_t k() const { return k_; }
    double q(std::size_t x, std::size_t y, std::size_t yp) const {
        return table_[(x * k_ + y) * k_ + yp];
    }

    Vec marginal_y() const;
    Vec marginal_yprime() const;
    // P(X=x, Y=y) summed over y'
    double mass_xy(std::size_t x, std::size_t y) const;
    // P(X=x, Y'=y') summed over y
    double mass_x_yprime(std::size_t x, std::size_t yp) const;

private:
    std::size_t nx_;
    std::size_t k_;
    Vec table_;
};

// True iff P(Y'=y' | Y=y, X=x) is constant in x (within tol) for every (y, y')
// with P(Y=y, X=x) > 0. Rows with zero mass are vacuously consistent.
bool check_conditional_independence(const DiscreteJoint& j, double tol = kSimplexTol);

// Balanced-noisy reweighting q(x,y,y') = p(x,y,y') / (K p(y')): uniform Y' marginal,
// conditional independence preserved. Requires instance-independent input and
// all P(Y'=y') > 0.
DiscreteJoint reweight_to_balanced_noisy(const DiscreteJoint& j);

}  // namespace noisylabels
