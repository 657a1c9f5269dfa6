#include "noisylabels/learners.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "noisylabels/errors.hpp"

namespace noisylabels {

const char* to_string(TrainRule rule) {
    switch (rule) {
        case TrainRule::Oracle: return "oracle";
        case TrainRule::Naive: return "naive";
        case TrainRule::WeightedERM: return "weighted-erm";
        case TrainRule::PeerLoss: return "peer-loss";
    }
    return "?";
}

const char* to_string(LossKind loss) {
    return loss == LossKind::ZeroOne ? "zero-one" : "logistic";
}

TrainRule train_rule_from_string(const std::string& s) {
    if (s == "oracle") return TrainRule::Oracle;
    if (s == "naive") return TrainRule::Naive;
    if (s == "weighted-erm") return TrainRule::WeightedERM;
    if (s == "peer-loss") return TrainRule::PeerLoss;
    throw std::invalid_argument("unknown training rule: " + s);
}

double logistic_loss(double a, int y) {
    // -a y + log(1 + e^a) = max(a, 0) - a y + log(1 + e^{-|a|})
    return std::max(a, 0.0) - a * static_cast<double>(y) + std::log1p(std::exp(-std::abs(a)));
}

double zero_one_loss(double a, int y) {
    int pred = a >= 0.0 ? 1 : 0;
    return pred == y ? 0.0 : 1.0;
}

double loss_value(LossKind kind, double a, int y) {
    return kind == LossKind::ZeroOne ? zero_one_loss(a, y) : logistic_loss(a, y);
}

std::pair<double, double> empirical_class_weights(const std::vector<int>& noisy_labels) {
    if (noisy_labels.empty()) throw EmptyDataset("empirical_class_weights: no labels");
    std::size_t ones = 0;
    for (int y : noisy_labels) {
        if (y != 0 && y != 1)
            throw LabelOutOfRange("empirical_class_weights: label " + std::to_string(y));
        ones += static_cast<std::size_t>(y);
    }
    double p1 = static_cast<double>(ones) / static_cast<double>(noisy_labels.size());
    return {1.0 - p1, p1};
}

double weighted_erm_risk(const LinearModel& model, const LabeledDataset& data, LossKind loss) {
    if (data.n == 0) throw EmptyDataset("weighted_erm_risk: empty dataset");
    auto [p0, p1] = empirical_class_weights(data.noisy_labels);
    double sum = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
        int y = data.noisy_labels[i];
        double w = y == 0 ? p1 : p0;  // p_n(1 - y'_i)
        sum += w * loss_value(loss, model.logit(data.row(i)), y);
    }
    return sum / static_cast<double>(data.n);
}

double peer_risk_raw(const LinearModel& model, const LabeledDataset& data, LossKind loss) {
    if (data.n < 2) throw TooFewSamples("peer_risk_raw: needs n >= 2");
    const std::size_t n = data.n;
    double first = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        first += loss_value(loss, model.logit(data.row(i)), data.noisy_labels[i]);
    first /= static_cast<double>(n);

    double second = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double fj = model.logit(data.row(j));
        for (std::size_t k = 0; k < n; ++k) {
            if (k == j) continue;
            second += loss_value(loss, fj, data.noisy_labels[k]);
        }
    }
    second /= static_cast<double>(n) * static_cast<double>(n - 1);
    return first - second;
}

double peer_risk_simplified(const LinearModel& model, const LabeledDataset& data, LossKind loss) {
    if (data.n < 2) throw TooFewSamples("peer_risk_simplified: needs n >= 2");
    auto [p0, p1] = empirical_class_weights(data.noisy_labels);
    double sum = 0.0;
    for (std::size_t i = 0; i < data.n; ++i) {
        int y = data.noisy_labels[i];
        double w = y == 0 ? p1 : p0;
        double f = model.logit(data.row(i));
        sum += w * (loss_value(loss, f, y) - loss_value(loss, f, 1 - y));
    }
    return sum / static_cast<double>(data.n - 1);
}

std::optional<std::vector<double>> peer_divergence_direction(const LabeledDataset& data) {
    if (data.n < 2) throw TooFewSamples("peer_divergence_direction: needs n >= 2");
    auto [p0, p1] = empirical_class_weights(data.noisy_labels);
    std::vector<double> v(data.dim, 0.0);
    for (std::size_t i = 0; i < data.n; ++i) {
        int y = data.noisy_labels[i];
        double c = (y == 0 ? p1 : p0) * static_cast<double>(2 * y - 1);
        const double* x = data.row(i);
        for (std::size_t j = 0; j < data.dim; ++j) v[j] += c * x[j];
    }
    double norm = 0.0;
    for (std::size_t j = 0; j < data.dim; ++j) {
        v[j] /= static_cast<double>(data.n - 1);
        norm = std::max(norm, std::abs(v[j]));
    }
    if (norm < 1e-12) return std::nullopt;
    return v;
}

namespace {

struct Objective {
    const LabeledDataset& data;
    const std::vector<int>& labels;
    std::vector<double> weights;  // per-sample
    double scale;                 // 1/n or 1/(n-1)
    bool peer;                    // peer: gradient factor is (1 - 2y), not (sigma - y)
    double l2;

    // returns inf-norm of the gradient; fills grad (size dim + 1, bias last)
    double gradient(const LinearModel& m, std::vector<double>& grad) const {
        std::fill(grad.begin(), grad.end(), 0.0);
        const std::size_t d = data.dim;
        for (std::size_t i = 0; i < data.n; ++i) {
            double f = m.logit(data.row(i));
            double g;
            if (peer) {
                g = weights[i] * static_cast<double>(1 - 2 * labels[i]);
            } else {
                double sigma = 1.0 / (1.0 + std::exp(-f));
                g = weights[i] * (sigma - static_cast<double>(labels[i]));
            }
            const double* x = data.row(i);
            for (std::size_t j = 0; j < d; ++j) grad[j] += g * x[j];
            grad[d] += g;
        }
        double inf = 0.0;
        for (std::size_t j = 0; j <= d; ++j) {
            grad[j] *= scale;
            if (j < d) grad[j] += l2 * m.weights[j];
            inf = std::max(inf, std::abs(grad[j]));
        }
        return inf;
    }
};

}  // namespace

TrainedModel train(const LabeledDataset& data, const TrainConfig& config) {
    if (data.n == 0) throw EmptyDataset("train: empty dataset");
    if (!(config.learning_rate > 0.0) || config.max_iters < 1)
        throw std::invalid_argument("train: learning_rate > 0 and max_iters >= 1 required");

    const std::size_t n = data.n;
    const bool peer = config.rule == TrainRule::PeerLoss;
    const bool clean = config.rule == TrainRule::Oracle;

    std::vector<double> w(n, 1.0);
    double scale = 1.0 / static_cast<double>(n);
    if (config.rule == TrainRule::WeightedERM || peer) {
        auto [p0, p1] = empirical_class_weights(data.noisy_labels);
        for (std::size_t i = 0; i < n; ++i) w[i] = data.noisy_labels[i] == 0 ? p1 : p0;
    }
    if (peer) {
        if (n < 2) throw TooFewSamples("train: peer loss needs n >= 2");
        if (peer_divergence_direction(data))
            throw Diverges("train: peer risk is unbounded below on this dataset");
        scale = 1.0 / static_cast<double>(n - 1);
    }
    Objective obj{data, clean ? data.clean_labels : data.noisy_labels, std::move(w), scale, peer,
                  config.l2};

    LinearModel m;
    m.weights.assign(data.dim, 0.0);
    m.bias = 0.0;

    std::vector<double> grad(data.dim + 1, 0.0);
    ConvergenceReport report;
    for (std::size_t it = 0; it < config.max_iters; ++it) {
        double inf = obj.gradient(m, grad);
        report.iters = it + 1;
        report.grad_inf_norm = inf;
        if (!std::isfinite(inf)) throw NonFinite("train: gradient overflow");
        if (inf < config.grad_tol) {
            report.converged = true;
            break;
        }
        for (std::size_t j = 0; j < data.dim; ++j) m.weights[j] -= config.learning_rate * grad[j];
        m.bias -= config.learning_rate * grad[data.dim];
        for (double wj : m.weights)
            if (!std::isfinite(wj)) throw NonFinite("train: weights overflow");
    }
    return {std::move(m), report};
}

double evaluate(const LinearModel& model, const std::vector<double>& features, std::size_t dim,
                const std::vector<int>& labels) {
    if (labels.empty()) throw EmptyDataset("evaluate: no labels");
    if (features.size() != labels.size() * dim)
        throw std::invalid_argument("evaluate: feature/label size mismatch");
    std::size_t hits = 0;
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (model.predict(features.data() + i * dim) == labels[i]) ++hits;
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

}  // namespace noisylabels
