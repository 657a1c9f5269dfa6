#include "noisylabels/noise_channel.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

#include "noisylabels/errors.hpp"
#include "noisylabels/rng.hpp"

namespace noisylabels {

NoiseMatrix::NoiseMatrix(StochasticMatrix e) : e_(std::move(e)), det_(matrix_determinant(e_)) {
    if (det_ <= kSingularTol)
        throw DegenerateChannel("NoiseMatrix: determinant must be positive, got " +
                                std::to_string(det_));
    if (e_.size() == 2 && e0() + e1() >= 1.0)
        throw DegenerateChannel("NoiseMatrix: e0 + e1 must be < 1, got " +
                                std::to_string(e0() + e1()));
}

double NoiseMatrix::e0() const {
    if (size() != 2) throw std::logic_error("NoiseMatrix::e0: binary channels only");
    return e_(1, 0);
}

double NoiseMatrix::e1() const {
    if (size() != 2) throw std::logic_error("NoiseMatrix::e1: binary channels only");
    return e_(0, 1);
}

NoiseMatrix NoiseMatrix::binary(double e0, double e1) {
    Matrix m(2, 2);
    m(0, 0) = 1.0 - e0;
    m(1, 0) = e0;
    m(0, 1) = e1;
    m(1, 1) = 1.0 - e1;
    return NoiseMatrix(validate_stochastic(std::move(m)));
}

std::vector<int> corrupt_labels(const std::vector<int>& labels, const NoiseMatrix& e,
                                std::uint64_t seed) {
    const std::size_t k = e.size();
    // cumulative distribution of each column
    std::vector<Vec> cum(k, Vec(k));
    for (std::size_t y = 0; y < k; ++y) {
        double c = 0.0;
        for (std::size_t yp = 0; yp < k; ++yp) {
            c += e(yp, y);
            cum[y][yp] = c;
        }
        cum[y][k - 1] = 1.0;  // absorb rounding
    }

    Rng rng(seed);
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) {
        int y = labels[i];
        if (y < 0 || static_cast<std::size_t>(y) >= k)
            throw LabelOutOfRange("corrupt_labels: label " + std::to_string(y) + " at index " +
                                  std::to_string(i) + " outside {0,...," + std::to_string(k - 1) +
                                  "}");
        double u = rng.uniform();
        const Vec& c = cum[static_cast<std::size_t>(y)];
        std::size_t yp = 0;
        while (yp + 1 < k && u >= c[yp]) ++yp;
        out[i] = static_cast<int>(yp);
    }
    return out;
}

std::pair<double, double> invert_binary_posterior(std::pair<double, double> a, double e01,
                                                  double e10) {
    if (e01 + e10 >= 1.0)
        throw DegenerateChannel("invert_binary_posterior: e01 + e10 = " +
                                std::to_string(e01 + e10) + " >= 1");
    const double s = 1.0 / (1.0 - e01 - e10);
    return {s * ((1.0 - e01) * a.first - e01 * a.second),
            s * (-e10 * a.first + (1.0 - e10) * a.second)};
}

double epsilon_from_marginals(double p1, double p1_prime, double eps12, bool allow_infeasible) {
    if (!(p1 > 0.0 && p1 < 1.0))
        throw std::invalid_argument("epsilon_from_marginals: p1 must lie in (0,1)");
    if (eps12 < 0.0 || eps12 > 1.0)
        throw std::invalid_argument("epsilon_from_marginals: eps12 must lie in [0,1]");
    double eps21 = (p1 - p1_prime + eps12 - eps12 * p1) / p1;
    if (!allow_infeasible) {
        if (eps21 < 0.0 || eps21 > 1.0)
            throw InfeasibleRates("epsilon_from_marginals: eps21 = " + std::to_string(eps21) +
                                  " outside [0,1]");
        if (eps12 + eps21 >= 1.0)
            throw InfeasibleRates("epsilon_from_marginals: eps12 + eps21 = " +
                                  std::to_string(eps12 + eps21) + " >= 1");
    }
    return eps21;
}

NoiseMatrix construct_noise_matrix(const SimplexVector& p, const SimplexVector& p_prime) {
    const std::size_t k = p.size();
    if (p_prime.size() != k)
        throw std::invalid_argument("construct_noise_matrix: dimension mismatch");
    for (std::size_t i = 0; i < k; ++i) {
        if (p[i] <= 0.0)
            throw NonPositiveEntry("construct_noise_matrix: p[" + std::to_string(i) + "] <= 0");
        if (p_prime[i] <= 0.0)
            throw NonPositiveEntry("construct_noise_matrix: p'[" + std::to_string(i) + "] <= 0");
    }

    // order[] sorts p' - p decreasing; ties keep original index order
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return (p_prime[a] - p[a]) > (p_prime[b] - p[b]);
    });

    Vec sp(k), spp(k);
    for (std::size_t i = 0; i < k; ++i) {
        sp[i] = p[order[i]];
        spp[i] = p_prime[order[i]];
    }

    // split index: sorted positions 0..c-1 carry the non-negative surplus
    std::size_t c = 0;
    while (c < k && spp[c] - sp[c] >= 0.0) ++c;

    double surplus = 0.0;
    for (std::size_t i = 0; i < c; ++i) surplus += spp[i] - sp[i];

    Matrix t(k, k);
    for (std::size_t i = 0; i < c; ++i) t(i, i) = 1.0;
    for (std::size_t i = c; i < k; ++i) t(i, i) = spp[i] / sp[i];
    if (c < k && surplus > 0.0) {
        for (std::size_t i = 0; i < c; ++i)
            for (std::size_t j = c; j < k; ++j)
                t(i, j) = (spp[i] - sp[i]) * (sp[j] - spp[j]) / (sp[j] * surplus);
    }

    // un-permute: E[i][j] = t[pos(i)][pos(j)]
    std::vector<std::size_t> pos(k);
    for (std::size_t i = 0; i < k; ++i) pos[order[i]] = i;
    Matrix e(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) e(i, j) = t(pos[i], pos[j]);

    return NoiseMatrix(validate_stochastic(std::move(e)));
}

namespace {

// Enumerate compositions of `total` into k parts, invoking fn on each;
// fn returning true stops the walk.
bool walk_compositions(std::size_t k, std::size_t total, std::vector<std::size_t>& parts,
                       std::size_t idx, const std::function<bool(const std::vector<std::size_t>&)>& fn) {
    if (idx + 1 == k) {
        parts[idx] = total;
        return fn(parts);
    }
    for (std::size_t v = total + 1; v-- > 0;) {
        parts[idx] = v;
        if (walk_compositions(k, total - v, parts, idx + 1, fn)) return true;
    }
    return false;
}

bool flips(const NoiseMatrix& e1, const NoiseMatrix& e2, const Vec& a, std::size_t* am1,
           std::size_t* am2) {
    Vec alpha1, alpha2;
    try {
        alpha1 = solve_linear(e1.stochastic(), a);
        alpha2 = solve_linear(e2.stochastic(), a);
    } catch (const SingularMatrix&) {
        return false;
    }
    std::size_t i1 = argmax_lowest(alpha1);
    std::size_t i2 = argmax_lowest(alpha2);
    if (i1 == i2) return false;
    if (am1) *am1 = i1;
    if (am2) *am2 = i2;
    return true;
}

}  // namespace

std::optional<Vec> find_argmax_flip(const NoiseMatrix& e1, const NoiseMatrix& e2) {
    if (e1.size() != e2.size())
        throw std::invalid_argument("find_argmax_flip: dimension mismatch");
    const std::size_t k = e1.size();
    constexpr std::size_t kBudget = 100000;
    constexpr std::size_t kGridBudget = kBudget / 2;
    constexpr std::size_t kResolution = 50;

    std::size_t used = 0;
    std::optional<Vec> found;

    std::vector<std::size_t> parts(k);
    walk_compositions(k, kResolution, parts, 0, [&](const std::vector<std::size_t>& c) {
        if (used >= kGridBudget) return true;
        ++used;
        Vec a(k);
        for (std::size_t i = 0; i < k; ++i)
            a[i] = static_cast<double>(c[i]) / static_cast<double>(kResolution);
        if (flips(e1, e2, a, nullptr, nullptr)) {
            found = a;
            return true;
        }
        return false;
    });
    if (found) return found;

    // seeded random refinement: Dirichlet(1) points
    Rng rng(0xC0FFEEULL);
    while (used < kBudget) {
        ++used;
        Vec a(k);
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = -std::log(1.0 - rng.uniform());
            s += a[i];
        }
        for (std::size_t i = 0; i < k; ++i) a[i] /= s;
        if (flips(e1, e2, a, nullptr, nullptr)) return a;
    }
    return std::nullopt;
}

namespace {

CounterexamplePair make_pair_with_witness(NoiseMatrix e1, NoiseMatrix e2, SimplexVector p,
                                          SimplexVector p_prime, const char* what) {
    auto witness = find_argmax_flip(e1, e2);
    if (!witness)
        throw NoFlipFound(std::string(what) + ": witness search exhausted its budget");
    std::size_t am1 = 0, am2 = 0;
    flips(e1, e2, *witness, &am1, &am2);
    return CounterexamplePair{std::move(e1), std::move(e2), std::move(p), std::move(p_prime),
                              std::move(*witness), am1, am2};
}

}  // namespace

CounterexamplePair balanced_counterexample(std::size_t k, std::optional<SimplexVector> p_prime,
                                           std::optional<PermutationMatrix> perm) {
    if (k < 3) throw std::invalid_argument("balanced_counterexample: needs K >= 3");
    SimplexVector p = SimplexVector::uniform(k);
    SimplexVector pp = p_prime ? *p_prime : SimplexVector::uniform(k);
    PermutationMatrix cycle = perm ? *perm : PermutationMatrix::cycle_first_three(k);
    if (cycle.size() != k)
        throw std::invalid_argument("balanced_counterexample: permutation size mismatch");
    if (!cycle.is_even())
        throw std::invalid_argument("balanced_counterexample: permutation must be even");

    NoiseMatrix e1 = construct_noise_matrix(p, pp);
    NoiseMatrix e2(validate_stochastic(e1.matrix().multiply(cycle.to_matrix())));
    return make_pair_with_witness(std::move(e1), std::move(e2), std::move(p), std::move(pp),
                                  "balanced_counterexample");
}

CounterexamplePair shrinkage_counterexample(const SimplexVector& p, const SimplexVector& p_prime,
                                            double delta) {
    const std::size_t k = p.size();
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("shrinkage_counterexample: delta must lie in (0,1)");
    bool uniform = true;
    for (std::size_t i = 0; i < k; ++i)
        if (std::abs(p[i] - 1.0 / static_cast<double>(k)) > kSimplexTol) uniform = false;
    if (uniform)
        throw std::invalid_argument("shrinkage_counterexample: p must not be uniform");

    NoiseMatrix e1 = construct_noise_matrix(p, p_prime);
    Matrix m2(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j)
            m2(i, j) = (1.0 - delta) * e1(i, j) + delta * p_prime[i];
    NoiseMatrix e2(validate_stochastic(std::move(m2)));

    // cross-check the rank-one closed form against a direct solve
    Rng rng(0xB00B5EEDULL);
    for (int trial = 0; trial < 16; ++trial) {
        Vec a(k);
        double s = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = -std::log(1.0 - rng.uniform());
            s += a[i];
        }
        for (std::size_t i = 0; i < k; ++i) a[i] /= s;
        Vec alpha = solve_linear(e1.stochastic(), a);
        Vec direct = solve_linear(e2.stochastic(), a);
        for (std::size_t i = 0; i < k; ++i) {
            double closed = (alpha[i] - delta * p[i]) / (1.0 - delta);
            if (std::abs(closed - direct[i]) >= 1e-10)
                throw std::logic_error("shrinkage_counterexample: closed form disagrees with solve");
        }
    }

    return make_pair_with_witness(std::move(e1), std::move(e2), p, p_prime,
                                  "shrinkage_counterexample");
}

}  // namespace noisylabels
