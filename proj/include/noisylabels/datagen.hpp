#pragma once

#include <cstdint>
#include <vector>

#include "noisylabels/model.hpp"
#include "noisylabels/noise_channel.hpp"

namespace noisylabels {

// Two-class Gaussian mixture: X | (Y = y) ~ N(mean_scale * (2y - 1) * 1, I).
struct GaussianMixtureSpec {
    double p1 = 0.5;         // P(Y = 1)
    std::size_t dim = 2;
    double mean_scale = 0.5;
};

struct LabeledDataset {
    std::size_t n = 0;
    std::size_t dim = 0;
    std::vector<double> features;  // row-major n x dim
    std::vector<int> clean_labels;
    std::vector<int> noisy_labels;
    std::uint64_t seed = 0;
    GaussianMixtureSpec spec;
    double eps0 = 0.0;  // P(Y'=1 | Y=0)
    double eps1 = 0.0;  // P(Y'=0 | Y=1)

    const double* row(std::size_t i) const { return features.data() + i * dim; }
};

// Pins eps1 so that P(Y'=0) = target_noisy_p0:
//   eps1 = (target_noisy_p0 - (1 - eps0)(1 - p1)) / p1.
// Throws InfeasibleRates when the result leaves [0,1] or eps0 + eps1 >= 1.
double eps1_from_eps0(double p1, double eps0, double target_noisy_p0 = 0.4);

// Y ~ Bernoulli(p1), X | Y per spec, Y' through the binary channel.
// Deterministic given seed.
LabeledDataset sample_dataset(const GaussianMixtureSpec& spec, double eps0, double eps1,
                              std::size_t n, std::uint64_t seed);

// Exact Bayes rule for the equal-covariance mixture: weights 2*mean_scale*1,
// bias log(p1 / (1 - p1)).
LinearModel analytic_bayes_classifier(const GaussianMixtureSpec& spec);

}  // namespace noisylabels
