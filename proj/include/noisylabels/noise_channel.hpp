#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "noisylabels/simplex.hpp"

namespace noisylabels {

// Column-stochastic channel with positive determinant. For K = 2 the named
// rates are e0 = P(Y'=1 | Y=0) and e1 = P(Y'=0 | Y=1); det > 0 is then
// equivalent to e0 + e1 < 1.
class NoiseMatrix {
public:
    explicit NoiseMatrix(StochasticMatrix e);

    const StochasticMatrix& stochastic() const { return e_; }
    const Matrix& matrix() const { return e_.matrix(); }
    std::size_t size() const { return e_.size(); }
    double det() const { return det_; }
    double operator()(std::size_t yprime, std::size_t y) const { return e_(yprime, y); }

    double e0() const;  // flip rate 0 -> 1, binary only
    double e1() const;  // flip rate 1 -> 0, binary only

    static NoiseMatrix binary(double e0, double e1);

private:
    StochasticMatrix e_;
    double det_;
};

// Samples Y'_i ~ E[.][Y_i] independently; deterministic given seed.
std::vector<int> corrupt_labels(const std::vector<int>& labels, const NoiseMatrix& e,
                                std::uint64_t seed);

// Binary posterior-mass inversion:
//   alpha = 1/(1 - e01 - e10) * [[1-e01, -e01], [-e10, 1-e10]] * a
// where e01 = P(Y'=0 | Y=1) and e10 = P(Y'=1 | Y=0).
std::pair<double, double> invert_binary_posterior(std::pair<double, double> a, double e01,
                                                  double e10);

// Given the first-class prior p1, its noisy marginal p1' and one flip rate
// eps12 = P(Y'=first | Y=second), the other rate is pinned by the marginal
// identity: eps21 = (p1 - p1' + eps12 - eps12*p1) / p1.
// Throws InfeasibleRates unless allow_infeasible, in which case the raw value
// is returned.
double epsilon_from_marginals(double p1, double p1_prime, double eps12,
                              bool allow_infeasible = false);

// Constructive existence of a stochastic matrix with E p = p', non-negative
// entries, unit column sums and positive determinant, for strictly positive
// p and p'. Sort p'-p decreasing via a permutation, split at
// K1 = max{k : (Pp)_k <= (Pp')_k}, fill the upper-triangular template, and
// un-permute.
NoiseMatrix construct_noise_matrix(const SimplexVector& p, const SimplexVector& p_prime);

// Two channels with the same observable action p -> p' whose induced clean
// posteriors disagree at the witness.
struct CounterexamplePair {
    NoiseMatrix e1;
    NoiseMatrix e2;
    SimplexVector p;
    SimplexVector p_prime;
    Vec witness_scores;  // probability-normalized noisy score vector a(x)
    std::size_t argmax_under_e1;
    std::size_t argmax_under_e2;
};

// Searches a deterministic simplex grid (resolution 1/50), then seeded random
// refinement, for a score vector whose argmax flips between the two channels.
// Budget 10^5 candidates; nullopt if exhausted. Ties break toward the lowest
// index.
std::optional<Vec> find_argmax_flip(const NoiseMatrix& e1, const NoiseMatrix& e2);

// Balanced multiclass construction: E1 from construct_noise_matrix(uniform, p')
// and E2 = E1 * P with P an even permutation (default: 3-cycle on the first
// three classes).
CounterexamplePair balanced_counterexample(std::size_t k,
                                           std::optional<SimplexVector> p_prime = std::nullopt,
                                           std::optional<PermutationMatrix> perm = std::nullopt);

// Imbalanced construction: E2 = (1-delta) E1 + delta p' 1^T. The rank-one
// closed form alpha~ = (alpha - delta p) / (1 - delta) is verified against a
// direct solve during construction.
CounterexamplePair shrinkage_counterexample(const SimplexVector& p, const SimplexVector& p_prime,
                                            double delta = 0.5);

inline std::size_t argmax_lowest(const Vec& v) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

}  // namespace noisylabels
