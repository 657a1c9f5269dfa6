#include "noisylabels/simplex.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "noisylabels/errors.hpp"

namespace noisylabels {

SimplexVector SimplexVector::uniform(std::size_t k) {
    return validate_simplex(Vec(k, 1.0 / static_cast<double>(k)));
}

SimplexVector validate_simplex(Vec v, double tol) {
    if (v.empty()) throw std::invalid_argument("validate_simplex: empty vector");
    double mass = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < -tol)
            throw NegativeEntry("simplex entry " + std::to_string(i) + " is negative: " +
                                std::to_string(v[i]));
        if (v[i] < 0.0) v[i] = 0.0;
        mass += v[i];
    }
    if (std::abs(mass - 1.0) > tol)
        throw MassNotOne("simplex mass deviates from 1 by " + std::to_string(mass - 1.0));
    return SimplexVector(std::move(v));
}

StochasticMatrix validate_stochastic(Matrix m, double tol) {
    if (m.rows() == 0 || m.rows() != m.cols())
        throw std::invalid_argument("validate_stochastic: matrix must be square and nonempty");
    const std::size_t k = m.rows();
    for (std::size_t j = 0; j < k; ++j) {
        double col = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            if (m(i, j) < -kNegClampTol)
                throw NegativeEntry("stochastic entry (" + std::to_string(i) + "," +
                                    std::to_string(j) + ") is negative: " + std::to_string(m(i, j)));
            if (m(i, j) < 0.0) m(i, j) = 0.0;
            col += m(i, j);
        }
        if (std::abs(col - 1.0) > tol)
            throw ColumnMassNotOne("column " + std::to_string(j) + " mass deviates from 1 by " +
                                   std::to_string(col - 1.0));
    }
    return StochasticMatrix(std::move(m));
}

double matrix_determinant(const StochasticMatrix& e) { return lu_determinant(e.matrix()); }

Vec solve_linear(const StochasticMatrix& e, const Vec& b) {
    Vec x = lu_solve(e.matrix(), b, kSingularTol);
    Vec back = e.matrix().apply(x);
    for (std::size_t i = 0; i < b.size(); ++i) {
        if (std::abs(back[i] - b[i]) >= kResidualTol)
            throw SingularMatrix("solve_linear: residual " + std::to_string(back[i] - b[i]) +
                                 " at row " + std::to_string(i));
    }
    return x;
}

PermutationMatrix::PermutationMatrix(std::vector<std::size_t> perm) : perm_(std::move(perm)) {
    const std::size_t n = perm_.size();
    std::vector<bool> seen(n, false);
    for (std::size_t v : perm_) {
        if (v >= n || seen[v]) throw std::invalid_argument("PermutationMatrix: not a bijection");
        seen[v] = true;
    }
    // parity from inversion count
    std::size_t inversions = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (perm_[i] > perm_[j]) ++inversions;
    even_ = (inversions % 2 == 0);
}

PermutationMatrix PermutationMatrix::cycle_first_three(std::size_t k) {
    if (k < 3) throw std::invalid_argument("cycle_first_three: needs K >= 3");
    std::vector<std::size_t> p(k);
    std::iota(p.begin(), p.end(), 0);
    p[0] = 1;
    p[1] = 2;
    p[2] = 0;
    return PermutationMatrix(std::move(p));
}

Matrix PermutationMatrix::to_matrix() const {
    Matrix m(perm_.size(), perm_.size());
    for (std::size_t j = 0; j < perm_.size(); ++j) m(perm_[j], j) = 1.0;
    return m;
}

PermutationMatrix PermutationMatrix::inverse() const {
    std::vector<std::size_t> inv(perm_.size());
    for (std::size_t j = 0; j < perm_.size(); ++j) inv[perm_[j]] = j;
    return PermutationMatrix(std::move(inv));
}

DiscreteJoint::DiscreteJoint(std::size_t nx, std::size_t k, Vec table, double tol)
    : nx_(nx), k_(k), table_(std::move(table)) {
    if (nx_ == 0 || nx_ > 64 || k_ < 2 || k_ > 10)
        throw std::invalid_argument("DiscreteJoint: support must satisfy 1 <= |X| <= 64, 2 <= K <= 10");
    if (table_.size() != nx_ * k_ * k_)
        throw std::invalid_argument("DiscreteJoint: table size mismatch");
    double mass = 0.0;
    for (std::size_t i = 0; i < table_.size(); ++i) {
        if (table_[i] < -tol)
            throw NegativeEntry("joint entry " + std::to_string(i) + " is negative");
        if (table_[i] < 0.0) table_[i] = 0.0;
        mass += table_[i];
    }
    if (std::abs(mass - 1.0) > tol)
        throw MassNotOne("joint mass deviates from 1 by " + std::to_string(mass - 1.0));
}

Vec DiscreteJoint::marginal_y() const {
    Vec p(k_, 0.0);
    for (std::size_t x = 0; x < nx_; ++x)
        for (std::size_t y = 0; y < k_; ++y)
            for (std::size_t yp = 0; yp < k_; ++yp) p[y] += q(x, y, yp);
    return p;
}

Vec DiscreteJoint::marginal_yprime() const {
    Vec p(k_, 0.0);
    for (std::size_t x = 0; x < nx_; ++x)
        for (std::size_t y = 0; y < k_; ++y)
            for (std::size_t yp = 0; yp < k_; ++yp) p[yp] += q(x, y, yp);
    return p;
}

double DiscreteJoint::mass_xy(std::size_t x, std::size_t y) const {
    double m = 0.0;
    for (std::size_t yp = 0; yp < k_; ++yp) m += q(x, y, yp);
    return m;
}

double DiscreteJoint::mass_x_yprime(std::size_t x, std::size_t yp) const {
    double m = 0.0;
    for (std::size_t y = 0; y < k_; ++y) m += q(x, y, yp);
    return m;
}

bool check_conditional_independence(const DiscreteJoint& j, double tol) {
    for (std::size_t y = 0; y < j.k(); ++y) {
        for (std::size_t yp = 0; yp < j.k(); ++yp) {
            bool have_ref = false;
            double ref = 0.0;
            for (std::size_t x = 0; x < j.nx(); ++x) {
                double mxy = j.mass_xy(x, y);
                if (mxy <= 0.0) continue;  // vacuous cell
                double rate = j.q(x, y, yp) / mxy;
                if (!have_ref) {
                    ref = rate;
                    have_ref = true;
                } else if (std::abs(rate - ref) > tol) {
                    return false;
                }
            }
        }
    }
    return true;
}

DiscreteJoint reweight_to_balanced_noisy(const DiscreteJoint& j) {
    if (!check_conditional_independence(j))
        throw NotInstanceIndependent("reweight_to_balanced_noisy: input joint is not instance independent");
    Vec pyp = j.marginal_yprime();
    for (std::size_t yp = 0; yp < j.k(); ++yp)
        if (pyp[yp] <= 0.0)
            throw ZeroNoisyClass("reweight_to_balanced_noisy: P(Y'=" + std::to_string(yp) + ") = 0");

    const double k = static_cast<double>(j.k());
    Vec table(j.nx() * j.k() * j.k());
    for (std::size_t x = 0; x < j.nx(); ++x)
        for (std::size_t y = 0; y < j.k(); ++y)
            for (std::size_t yp = 0; yp < j.k(); ++yp)
                table[(x * j.k() + y) * j.k() + yp] = j.q(x, y, yp) / (k * pyp[yp]);
    return DiscreteJoint(j.nx(), j.k(), std::move(table));
}

}  // namespace noisylabels
