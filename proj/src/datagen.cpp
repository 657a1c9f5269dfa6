#include "noisylabels/datagen.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "noisylabels/errors.hpp"
#include "noisylabels/rng.hpp"

namespace noisylabels {

double eps1_from_eps0(double p1, double eps0, double target_noisy_p0) {
    if (!(p1 > 0.0 && p1 < 1.0))
        throw std::invalid_argument("eps1_from_eps0: p1 must lie in (0,1)");
    double eps1 = (target_noisy_p0 - (1.0 - eps0) * (1.0 - p1)) / p1;
    if (eps1 < 0.0 || eps1 > 1.0)
        throw InfeasibleRates("eps1_from_eps0: eps1 = " + std::to_string(eps1) +
                              " outside [0,1]");
    if (eps0 + eps1 >= 1.0)
        throw InfeasibleRates("eps1_from_eps0: eps0 + eps1 = " + std::to_string(eps0 + eps1) +
                              " >= 1");
    return eps1;
}

LabeledDataset sample_dataset(const GaussianMixtureSpec& spec, double eps0, double eps1,
                              std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_dataset: n must be >= 1");
    if (!(spec.p1 > 0.0 && spec.p1 < 1.0))
        throw std::invalid_argument("sample_dataset: p1 must lie in (0,1)");
    NoiseMatrix channel = NoiseMatrix::binary(eps0, eps1);  // throws on infeasible rates

    LabeledDataset ds;
    ds.n = n;
    ds.dim = spec.dim;
    ds.seed = seed;
    ds.spec = spec;
    ds.eps0 = eps0;
    ds.eps1 = eps1;
    ds.features.resize(n * spec.dim);
    ds.clean_labels.resize(n);

    Rng rng(seed);
    for (std::size_t i = 0; i < n; ++i) {
        int y = rng.uniform() < spec.p1 ? 1 : 0;
        ds.clean_labels[i] = y;
        double mean = spec.mean_scale * static_cast<double>(2 * y - 1);
        for (std::size_t j = 0; j < spec.dim; ++j)
            ds.features[i * spec.dim + j] = mean + rng.normal();
    }
    // independent stream for the corruption step
    ds.noisy_labels = corrupt_labels(ds.clean_labels, channel, child_seed(seed, 0x6e6f697365ULL));
    return ds;
}

LinearModel analytic_bayes_classifier(const GaussianMixtureSpec& spec) {
    LinearModel m;
    m.weights.assign(spec.dim, 2.0 * spec.mean_scale);
    m.bias = std::log(spec.p1 / (1.0 - spec.p1));
    return m;
}

}  // namespace noisylabels
