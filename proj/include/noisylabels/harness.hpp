#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "noisylabels/learners.hpp"

namespace noisylabels {

struct ExperimentConfig {
    double p1 = 0.5;
    double eps0 = 0.3;
    double target_noisy_p0 = 0.4;
    std::vector<std::size_t> sample_sizes{100, 250, 500, 1000, 2500};
    std::size_t n_trials = 100;
    std::size_t n_test = 10000;
    std::uint64_t master_seed = 42;
    std::vector<TrainRule> rules{TrainRule::Oracle, TrainRule::Naive, TrainRule::WeightedERM};
    std::size_t threads = 1;
    TrainConfig base_train;
};

struct TrialRecord {
    TrainRule rule;
    std::size_t n;
    std::size_t trial;
    double accuracy;  // NaN when diverged
    bool diverged;
};

struct SummaryRecord {
    TrainRule rule;
    std::size_t n;
    double mean;
    double stderr_;
    std::size_t count;  // non-diverged trials
};

struct ExperimentResult {
    ExperimentConfig config;
    double eps1;
    std::vector<TrialRecord> records;   // sorted by (rule, n, trial)
    std::vector<SummaryRecord> summary;
};

// One fresh train set per (n, trial), one shared clean test set. Per-trial
// seeds derive from master_seed, so results do not depend on scheduling.
// Peer-loss divergence is recorded per trial, not propagated.
ExperimentResult run_experiment(const ExperimentConfig& config);

// Writes results.csv (rule,n,trial,accuracy,diverged), summary.csv
// (rule,n,mean,stderr,count) and metadata.json under dir.
void export_results(const ExperimentResult& result, const std::filesystem::path& dir);

}  // namespace noisylabels
