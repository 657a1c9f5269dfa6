#pragma once

#include <vector>

namespace noisylabels {

// Linear logit f(x) = w . x + bias; predicted class is 1{f(x) >= 0}.
struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;

    double logit(const double* x) const {
        double s = bias;
        for (std::size_t j = 0; j < weights.size(); ++j) s += weights[j] * x[j];
        return s;
    }

    int predict(const double* x) const { return logit(x) >= 0.0 ? 1 : 0; }
};

}  // namespace noisylabels
