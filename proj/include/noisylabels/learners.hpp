#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "noisylabels/datagen.hpp"
#include "noisylabels/model.hpp"

namespace noisylabels {

enum class LossKind { ZeroOne, Logistic };
enum class TrainRule { Oracle, Naive, WeightedERM, PeerLoss };

const char* to_string(TrainRule rule);
const char* to_string(LossKind loss);
TrainRule train_rule_from_string(const std::string& s);

struct TrainConfig {
    TrainRule rule = TrainRule::WeightedERM;
    double learning_rate = 0.1;
    std::size_t max_iters = 5000;
    double grad_tol = 1e-7;
    std::uint64_t seed = 0;
    double l2 = 0.0;  // off by default; only there to keep Naive finite on separable data
};

struct ConvergenceReport {
    std::size_t iters = 0;
    double grad_inf_norm = 0.0;
    bool converged = false;
};

struct TrainedModel {
    LinearModel model;
    ConvergenceReport report;
};

// Logistic loss on logits: l(a, y) = -a y + log(1 + e^a), computed stably.
double logistic_loss(double logit, int y);
// 0-1 loss with the boundary assigned to class 1.
double zero_one_loss(double logit, int y);
double loss_value(LossKind kind, double logit, int y);

// Empirical proportions (p_n(0), p_n(1)) of the noisy labels.
std::pair<double, double> empirical_class_weights(const std::vector<int>& noisy_labels);

// (1/n) sum_i p_n(1 - y'_i) l(f(x_i), y'_i), with p_n from the same dataset.
double weighted_erm_risk(const LinearModel& model, const LabeledDataset& data, LossKind loss);

// Exact double-sum peer risk:
//   (1/n) sum_i l(f(x_i), y'_i) - (1/(n(n-1))) sum_j sum_{k != j} l(f(x_j), y'_k).
double peer_risk_raw(const LinearModel& model, const LabeledDataset& data, LossKind loss);

// Equivalent simplified form:
//   (1/(n-1)) sum_i p_n(1 - y'_i) { l(f(x_i), y'_i) - l(f(x_i), 1 - y'_i) }.
double peer_risk_simplified(const LinearModel& model, const LabeledDataset& data, LossKind loss);

// v = (1/(n-1)) sum_i p_n(1 - y'_i) (2 y'_i - 1) x_i. Along beta = t v the
// logistic peer risk is -t ||v||^2, so any nonzero v drives it to -infinity.
// nullopt when ||v||_inf < 1e-12.
std::optional<std::vector<double>> peer_divergence_direction(const LabeledDataset& data);

// Full-batch gradient descent on the rule's logistic risk. PeerLoss first
// checks peer_divergence_direction and throws Diverges if the risk is
// unbounded below.
TrainedModel train(const LabeledDataset& data, const TrainConfig& config);

// Fraction of 1{f(x) >= 0} == y.
double evaluate(const LinearModel& model, const std::vector<double>& features, std::size_t dim,
                const std::vector<int>& labels);

}  // namespace noisylabels
