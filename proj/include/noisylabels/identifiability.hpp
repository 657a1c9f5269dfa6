#pragma once

#include <optional>
#include <utility>

#include "noisylabels/noise_channel.hpp"
#include "noisylabels/simplex.hpp"

namespace noisylabels {

enum class IdentifiabilityReason { BalancedBinary, ImbalancedBinary, Multiclass };

// Closed-open interval [lo, hi).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool empty = true;
    bool contains(double x) const { return !empty && x >= lo && x < hi; }
};

// Concrete disagreement for the imbalanced binary case: two feasible flip
// rates whose decision thresholds differ, plus one score pair the thresholds
// classify differently.
struct BinaryThresholdWitness {
    double eps12_a;
    double tau_a;
    double eps12_b;
    double tau_b;
    std::pair<double, double> scores;  // (a1, a2), a1 + a2 = 1
};

struct IdentifiabilityVerdict {
    bool identifiable;
    IdentifiabilityReason reason;
    std::optional<CounterexamplePair> multiclass_witness;
    std::optional<BinaryThresholdWitness> binary_witness;
};

// Decision threshold tau = (p1' + eps12 * (2 p1 - 1)) / p1: the Bayes rule
// assigns the first class iff 2 a1(x) >= tau * (a1(x) + a2(x)). "1" denotes
// the first of the two classes (index 0 internally). Throws InfeasibleRates
// when eps12 has no feasible partner rate.
double binary_boundary_threshold(double p1, double p1_prime, double eps12);

// All eps12 in [0,1] whose partner rate from epsilon_from_marginals lies in
// [0,1] with eps12 + eps21 < 1. p1 in (0,1); p1_prime may take the closed
// boundary values 0 and 1 to express degenerate noisy marginals (the interval
// is then empty).
Interval feasible_eps12_range(double p1, double p1_prime);

// The dichotomy: identifiable iff K = 2 and |p[0] - 1/2| <= tol. Otherwise a
// constructive witness is attached: a threshold pair for imbalanced binary, a
// permutation pair for uniform multiclass, a shrinkage pair for imbalanced
// multiclass. When p_prime is omitted a reference noisy marginal
// 0.8 p + 0.2 uniform is used for witness construction.
IdentifiabilityVerdict is_identifiable(std::size_t k, const SimplexVector& p,
                                       double tol = kSimplexTol,
                                       std::optional<SimplexVector> p_prime = std::nullopt);

}  // namespace noisylabels
