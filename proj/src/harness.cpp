#include "noisylabels/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <thread>

#include <json.hpp>

#include "noisylabels/errors.hpp"
#include "noisylabels/rng.hpp"

namespace noisylabels {

namespace {

constexpr const char* kVersion = "0.1.0";

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& config) {
    if (config.n_trials < 1 || config.n_test < 1 || config.sample_sizes.empty())
        throw std::invalid_argument("run_experiment: n_trials, n_test and sample_sizes required");
    // fail before any trial runs if the channel is infeasible
    const double eps1 = eps1_from_eps0(config.p1, config.eps0, config.target_noisy_p0);

    GaussianMixtureSpec spec;
    spec.p1 = config.p1;

    // shared clean test set; stream index 0 is reserved for it
    LabeledDataset test = sample_dataset(spec, config.eps0, eps1, config.n_test,
                                         child_seed(config.master_seed, 0));

    const std::size_t n_sizes = config.sample_sizes.size();
    const std::size_t n_rules = config.rules.size();
    const std::size_t n_jobs = n_sizes * config.n_trials;

    std::vector<TrialRecord> records(n_jobs * n_rules);

    auto run_job = [&](std::size_t job) {
        const std::size_t size_idx = job / config.n_trials;
        const std::size_t trial = job % config.n_trials;
        const std::size_t n = config.sample_sizes[size_idx];
        LabeledDataset data = sample_dataset(spec, config.eps0, eps1, n,
                                             child_seed(config.master_seed, 1 + job));
        for (std::size_t r = 0; r < n_rules; ++r) {
            TrainConfig tc = config.base_train;
            tc.rule = config.rules[r];
            TrialRecord rec{tc.rule, n, trial, std::numeric_limits<double>::quiet_NaN(), false};
            try {
                TrainedModel tm = train(data, tc);
                rec.accuracy = evaluate(tm.model, test.features, test.dim, test.clean_labels);
            } catch (const Diverges&) {
                rec.diverged = true;
            }
            records[job * n_rules + r] = rec;
        }
    };

    const std::size_t n_threads = std::max<std::size_t>(1, config.threads);
    if (n_threads == 1) {
        for (std::size_t job = 0; job < n_jobs; ++job) run_job(job);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> workers;
        workers.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t)
            workers.emplace_back([&] {
                for (std::size_t job = next.fetch_add(1); job < n_jobs; job = next.fetch_add(1))
                    run_job(job);
            });
        for (auto& w : workers) w.join();
    }

    // sort records by (rule order, n order, trial) for order-independent output
    std::vector<TrialRecord> sorted;
    sorted.reserve(records.size());
    for (std::size_t r = 0; r < n_rules; ++r)
        for (std::size_t s = 0; s < n_sizes; ++s)
            for (std::size_t t = 0; t < config.n_trials; ++t)
                sorted.push_back(records[(s * config.n_trials + t) * n_rules + r]);

    std::vector<SummaryRecord> summary;
    for (std::size_t r = 0; r < n_rules; ++r) {
        for (std::size_t s = 0; s < n_sizes; ++s) {
            double sum = 0.0, sum_sq = 0.0;
            std::size_t count = 0;
            for (std::size_t t = 0; t < config.n_trials; ++t) {
                const TrialRecord& rec = sorted[(r * n_sizes + s) * config.n_trials + t];
                if (rec.diverged) continue;
                sum += rec.accuracy;
                sum_sq += rec.accuracy * rec.accuracy;
                ++count;
            }
            double mean = count ? sum / static_cast<double>(count)
                                : std::numeric_limits<double>::quiet_NaN();
            double se = std::numeric_limits<double>::quiet_NaN();
            if (count > 1) {
                double var = (sum_sq - sum * mean) / static_cast<double>(count - 1);
                se = std::sqrt(std::max(var, 0.0) / static_cast<double>(count));
            }
            summary.push_back({config.rules[r], config.sample_sizes[s], mean, se, count});
        }
    }

    return {config, eps1, std::move(sorted), std::move(summary)};
}

void export_results(const ExperimentResult& result, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("export_results: cannot create " + dir.string());

    {
        std::ofstream out(dir / "results.csv");
        if (!out) throw IoError("export_results: cannot open results.csv");
        out << "rule,n,trial,accuracy,diverged\n";
        for (const auto& rec : result.records) {
            out << to_string(rec.rule) << ',' << rec.n << ',' << rec.trial << ','
                << (rec.diverged ? "" : fmt_double(rec.accuracy)) << ','
                << (rec.diverged ? 1 : 0) << '\n';
        }
    }
    {
        std::ofstream out(dir / "summary.csv");
        if (!out) throw IoError("export_results: cannot open summary.csv");
        out << "rule,n,mean,stderr,count\n";
        for (const auto& s : result.summary) {
            out << to_string(s.rule) << ',' << s.n << ',' << fmt_double(s.mean) << ','
                << fmt_double(s.stderr_) << ',' << s.count << '\n';
        }
    }
    {
        nlohmann::json meta;
        meta["version"] = kVersion;
        meta["p1"] = result.config.p1;
        meta["eps0"] = result.config.eps0;
        meta["eps1"] = result.eps1;
        meta["target_noisy_p0"] = result.config.target_noisy_p0;
        meta["sample_sizes"] = result.config.sample_sizes;
        meta["n_trials"] = result.config.n_trials;
        meta["n_test"] = result.config.n_test;
        meta["master_seed"] = result.config.master_seed;
        std::vector<std::string> rules;
        for (TrainRule r : result.config.rules) rules.emplace_back(to_string(r));
        meta["rules"] = rules;
        meta["train"] = {{"learning_rate", result.config.base_train.learning_rate},
                         {"max_iters", result.config.base_train.max_iters},
                         {"grad_tol", result.config.base_train.grad_tol},
                         {"l2", result.config.base_train.l2}};
        std::ofstream out(dir / "metadata.json");
        if (!out) throw IoError("export_results: cannot open metadata.json");
        out << meta.dump(2) << '\n';
    }
}

}  // namespace noisylabels
