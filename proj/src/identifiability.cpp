#include "noisylabels/identifiability.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "noisylabels/errors.hpp"

namespace noisylabels {

double binary_boundary_threshold(double p1, double p1_prime, double eps12) {
    // feasibility gate: throws InfeasibleRates if the partner rate is out of range
    (void)epsilon_from_marginals(p1, p1_prime, eps12);
    return (p1_prime + eps12 * (2.0 * p1 - 1.0)) / p1;
}

Interval feasible_eps12_range(double p1, double p1_prime) {
    if (!(p1 > 0.0 && p1 < 1.0))
        throw std::invalid_argument("feasible_eps12_range: p1 must lie in (0,1)");
    if (p1_prime < 0.0 || p1_prime > 1.0)
        throw std::invalid_argument("feasible_eps12_range: p1' must lie in [0,1]");

    // eps21(eps12) = (p1 - p1' + eps12 (1 - p1)) / p1 is increasing in eps12.
    //   eps21 >= 0        <=>  eps12 >= (p1' - p1) / (1 - p1)
    //   eps21 <= 1        <=>  eps12 <= p1' / (1 - p1)
    //   eps12 + eps21 < 1 <=>  eps12 < p1'
    double lo = std::max(0.0, (p1_prime - p1) / (1.0 - p1));
    double hi = std::min({1.0, p1_prime / (1.0 - p1), p1_prime});
    Interval iv;
    iv.lo = lo;
    iv.hi = hi;
    iv.empty = !(lo < hi);
    return iv;
}

namespace {

SimplexVector reference_noisy_marginal(const SimplexVector& p) {
    const double k = static_cast<double>(p.size());
    Vec pp(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) pp[i] = 0.8 * p[i] + 0.2 / k;
    return validate_simplex(std::move(pp));
}

BinaryThresholdWitness binary_witness(double p1, double p1_prime) {
    Interval iv = feasible_eps12_range(p1, p1_prime);
    if (iv.empty)
        throw InfeasibleRates("binary witness: no feasible flip rate for the given marginals");
    double eps_a = iv.lo + 0.25 * (iv.hi - iv.lo);
    double eps_b = iv.lo + 0.75 * (iv.hi - iv.lo);
    double tau_a = binary_boundary_threshold(p1, p1_prime, eps_a);
    double tau_b = binary_boundary_threshold(p1, p1_prime, eps_b);
    // With a1 + a2 = 1 the rule is "first class iff 2 a1 >= tau", so any a1
    // strictly between tau/2 values is classified differently by the two
    // channels.
    double a1 = 0.25 * (tau_a + tau_b);
    return BinaryThresholdWitness{eps_a, tau_a, eps_b, tau_b, {a1, 1.0 - a1}};
}

}  // namespace

IdentifiabilityVerdict is_identifiable(std::size_t k, const SimplexVector& p, double tol,
                                       std::optional<SimplexVector> p_prime) {
    if (k < 2 || p.size() != k)
        throw std::invalid_argument("is_identifiable: K >= 2 with p over K classes required");

    if (k == 2) {
        if (std::abs(p[0] - 0.5) <= tol)
            return {true, IdentifiabilityReason::BalancedBinary, std::nullopt, std::nullopt};
        double p1_prime = p_prime ? (*p_prime)[0] : reference_noisy_marginal(p)[0];
        return {false, IdentifiabilityReason::ImbalancedBinary, std::nullopt,
                binary_witness(p[0], p1_prime)};
    }

    bool uniform = true;
    for (std::size_t i = 0; i < k; ++i)
        if (std::abs(p[i] - 1.0 / static_cast<double>(k)) > tol) uniform = false;

    CounterexamplePair pair =
        uniform ? balanced_counterexample(k, p_prime)
                : shrinkage_counterexample(p, p_prime ? *p_prime : reference_noisy_marginal(p));
    return {false, IdentifiabilityReason::Multiclass, std::move(pair), std::nullopt};
}

}  // namespace noisylabels
