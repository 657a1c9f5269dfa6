#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "noisylabels/errors.hpp"
#include "noisylabels/harness.hpp"
#include "noisylabels/identifiability.hpp"
#include "noisylabels/json_io.hpp"

namespace nl = noisylabels;

namespace {

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) out.push_back(std::stod(cell));
    return out;
}

void emit(const nlohmann::json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        std::ofstream f(out_path);
        if (!f) throw nl::IoError("cannot open " + out_path);
        f << j.dump(2) << '\n';
    }
}

int run(int argc, char** argv) {
    CLI::App app{"Classification with noisy labels: identifiability, witnesses and learners"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    std::string out_path;
    std::string config_path;
    std::size_t threads = 1;
    app.add_option("--seed", seed, "master seed");
    app.add_option("--out", out_path, "output file or directory");
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--threads", threads, "worker threads for experiments");

    // simulate
    auto* sim = app.add_subcommand("simulate", "sample a Gaussian-mixture dataset with noisy labels");
    double sim_p1 = 0.5, sim_eps0 = 0.3, sim_eps1 = -1.0, sim_target = 0.4;
    std::size_t sim_n = 1000, sim_dim = 2;
    sim->add_option("--p1", sim_p1, "P(Y=1)");
    sim->add_option("--eps0", sim_eps0, "P(Y'=1|Y=0)");
    sim->add_option("--eps1", sim_eps1, "P(Y'=0|Y=1); derived from --target-p0 when omitted");
    sim->add_option("--target-p0", sim_target, "target P(Y'=0) used to derive eps1");
    sim->add_option("--n", sim_n, "sample size");
    sim->add_option("--dim", sim_dim, "feature dimension");

    // train
    auto* tr = app.add_subcommand("train", "train a linear model on a dataset CSV");
    std::string tr_data, tr_rule = "weighted-erm";
    nl::TrainConfig tr_cfg;
    tr->add_option("--data", tr_data, "dataset CSV")->required();
    tr->add_option("--rule", tr_rule, "oracle | naive | weighted-erm | peer-loss");
    tr->add_option("--lr", tr_cfg.learning_rate, "learning rate");
    tr->add_option("--max-iters", tr_cfg.max_iters, "iteration cap");
    tr->add_option("--grad-tol", tr_cfg.grad_tol, "gradient stopping tolerance");
    tr->add_option("--l2", tr_cfg.l2, "optional L2 strength");

    // identify
    auto* id = app.add_subcommand("identify", "decide identifiability of the Bayes classifier");
    std::size_t id_k = 2;
    std::string id_p, id_pp;
    double id_tol = 1e-9;
    id->add_option("--k", id_k, "number of classes");
    id->add_option("--p", id_p, "clean prior, comma separated")->required();
    id->add_option("--p-prime", id_pp, "noisy marginal, comma separated (optional)");
    id->add_option("--tol", id_tol, "tolerance for 'balanced'");

    // construct-noise
    auto* cn = app.add_subcommand("construct-noise", "stochastic matrix with E p = p'");
    std::string cn_p, cn_pp;
    cn->add_option("--p", cn_p, "clean prior")->required();
    cn->add_option("--p-prime", cn_pp, "noisy marginal")->required();

    // counterexample
    auto* ce = app.add_subcommand("counterexample", "two channels with the same observables");
    std::size_t ce_k = 3;
    std::string ce_p, ce_pp;
    double ce_delta = 0.5;
    ce->add_option("--k", ce_k, "classes (balanced construction)");
    ce->add_option("--p", ce_p, "non-uniform prior (shrinkage construction)");
    ce->add_option("--p-prime", ce_pp, "noisy marginal (optional)");
    ce->add_option("--delta", ce_delta, "shrinkage amount in (0,1)");

    // peer-check
    auto* pc = app.add_subcommand("peer-check", "detect peer-loss divergence on a dataset");
    std::string pc_data;
    pc->add_option("--data", pc_data, "dataset CSV")->required();

    // experiment
    auto* ex = app.add_subcommand("experiment", "Monte-Carlo accuracy sweep");
    nl::ExperimentConfig ex_cfg;
    std::string ex_rules = "oracle,naive,weighted-erm";
    std::string ex_sizes;
    ex->add_option("--p1", ex_cfg.p1, "P(Y=1)");
    ex->add_option("--eps0", ex_cfg.eps0, "P(Y'=1|Y=0)");
    ex->add_option("--target-p0", ex_cfg.target_noisy_p0, "target P(Y'=0)");
    ex->add_option("--sizes", ex_sizes, "train sizes, comma separated");
    ex->add_option("--trials", ex_cfg.n_trials, "trials per size");
    ex->add_option("--n-test", ex_cfg.n_test, "test set size");
    ex->add_option("--rules", ex_rules, "rules, comma separated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    if (sim->parsed()) {
        nl::GaussianMixtureSpec spec{sim_p1, sim_dim, 0.5};
        double eps1 = sim_eps1 >= 0.0 ? sim_eps1 : nl::eps1_from_eps0(sim_p1, sim_eps0, sim_target);
        nl::LabeledDataset ds = nl::sample_dataset(spec, sim_eps0, eps1, sim_n, seed);
        std::string path = out_path.empty() ? "dataset.csv" : out_path;
        nl::write_dataset_csv(ds, path);
        std::cout << "wrote " << path << " (n=" << sim_n << ", eps0=" << sim_eps0
                  << ", eps1=" << eps1 << ")\n";
    } else if (tr->parsed()) {
        nl::LabeledDataset ds = nl::read_dataset_csv(tr_data);
        tr_cfg.rule = nl::train_rule_from_string(tr_rule);
        tr_cfg.seed = seed;
        nl::TrainedModel tm = nl::train(ds, tr_cfg);
        emit(nl::model_to_json(tm.model, tm.report, tr_cfg.rule, seed), out_path);
    } else if (id->parsed()) {
        nl::SimplexVector p = nl::validate_simplex(parse_doubles(id_p));
        std::optional<nl::SimplexVector> pp;
        if (!id_pp.empty()) pp = nl::validate_simplex(parse_doubles(id_pp));
        if (id->count("--k") == 0) id_k = p.size();
        nl::IdentifiabilityVerdict v = nl::is_identifiable(id_k, p, id_tol, pp);
        emit(nl::verdict_to_json(v), out_path);
        if (v.identifiable) {
            std::cerr << "Identifiable: balanced binary classification. The Bayes classifier is "
                         "the same for every compatible noise channel.\n";
        } else if (v.reason == nl::IdentifiabilityReason::ImbalancedBinary) {
            std::cerr << "Not identifiable: imbalanced binary. Two feasible flip rates give "
                         "decision thresholds "
                      << v.binary_witness->tau_a << " and " << v.binary_witness->tau_b
                      << "; the attached score pair is classified differently by each.\n";
        } else {
            std::cerr << "Not identifiable: more than two classes. The two attached channels map "
                         "p to the same noisy marginal but disagree at the witness (argmax "
                      << v.multiclass_witness->argmax_under_e1 << " vs "
                      << v.multiclass_witness->argmax_under_e2 << ").\n";
        }
    } else if (cn->parsed()) {
        nl::SimplexVector p = nl::validate_simplex(parse_doubles(cn_p));
        nl::SimplexVector pp = nl::validate_simplex(parse_doubles(cn_pp));
        nl::NoiseMatrix e = nl::construct_noise_matrix(p, pp);
        nlohmann::json j;
        j["E"] = nl::noise_matrix_to_json(e);
        j["p"] = nl::vec_to_json(p.probs());
        j["p_prime"] = nl::vec_to_json(pp.probs());
        emit(j, out_path);
    } else if (ce->parsed()) {
        nl::CounterexamplePair pair = [&] {
            if (!ce_p.empty()) {
                nl::SimplexVector p = nl::validate_simplex(parse_doubles(ce_p));
                nl::SimplexVector pp = ce_pp.empty()
                    ? nl::validate_simplex([&] {
                          nl::Vec v(p.size());
                          for (std::size_t i = 0; i < p.size(); ++i)
                              v[i] = 0.8 * p[i] + 0.2 / static_cast<double>(p.size());
                          return v;
                      }())
                    : nl::validate_simplex(parse_doubles(ce_pp));
                return nl::shrinkage_counterexample(p, pp, ce_delta);
            }
            std::optional<nl::SimplexVector> pp;
            if (!ce_pp.empty()) pp = nl::validate_simplex(parse_doubles(ce_pp));
            return nl::balanced_counterexample(ce_k, pp);
        }();
        emit(nl::counterexample_to_json(pair), out_path);
    } else if (pc->parsed()) {
        nl::LabeledDataset ds = nl::read_dataset_csv(pc_data);
        auto v = nl::peer_divergence_direction(ds);
        nlohmann::json j;
        j["diverges"] = v.has_value();
        if (v) {
            j["direction"] = *v;
            nl::LinearModel m;
            m.weights = *v;
            nlohmann::json risks = nlohmann::json::array();
            for (double t : {1.0, 10.0, 100.0}) {
                nl::LinearModel mt = m;
                for (double& w : mt.weights) w *= t;
                risks.push_back({{"t", t},
                                 {"peer_risk", nl::peer_risk_simplified(mt, ds, nl::LossKind::Logistic)}});
            }
            j["risk_along_direction"] = risks;
        }
        emit(j, out_path);
    } else if (ex->parsed()) {
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw nl::IoError("cannot open " + config_path);
            nlohmann::json j = nlohmann::json::parse(f);
            ex_cfg.p1 = j.value("p1", ex_cfg.p1);
            ex_cfg.eps0 = j.value("eps0", ex_cfg.eps0);
            ex_cfg.target_noisy_p0 = j.value("target_noisy_p0", ex_cfg.target_noisy_p0);
            if (j.contains("sample_sizes"))
                ex_cfg.sample_sizes = j["sample_sizes"].get<std::vector<std::size_t>>();
            ex_cfg.n_trials = j.value("n_trials", ex_cfg.n_trials);
            ex_cfg.n_test = j.value("n_test", ex_cfg.n_test);
            ex_cfg.master_seed = j.value("master_seed", seed);
            if (j.contains("rules")) {
                ex_cfg.rules.clear();
                for (const auto& r : j["rules"])
                    ex_cfg.rules.push_back(nl::train_rule_from_string(r.get<std::string>()));
            }
        } else {
            ex_cfg.master_seed = seed;
            if (!ex_sizes.empty()) {
                ex_cfg.sample_sizes.clear();
                for (double v : parse_doubles(ex_sizes))
                    ex_cfg.sample_sizes.push_back(static_cast<std::size_t>(v));
            }
            ex_cfg.rules.clear();
            std::stringstream ss(ex_rules);
            std::string cell;
            while (std::getline(ss, cell, ','))
                ex_cfg.rules.push_back(nl::train_rule_from_string(cell));
        }
        ex_cfg.threads = threads;
        nl::ExperimentResult result = nl::run_experiment(ex_cfg);
        std::string dir = out_path.empty() ? "experiment-out" : out_path;
        nl::export_results(result, dir);
        std::cout << "wrote " << dir << "/results.csv, summary.csv, metadata.json\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const nl::InfeasibleRates& e) {
        std::cerr << "infeasible configuration: " << e.what() << '\n';
        return 2;
    } catch (const nl::DegenerateChannel& e) {
        std::cerr << "infeasible configuration: " << e.what() << '\n';
        return 2;
    } catch (const nl::NonPositiveEntry& e) {
        std::cerr << "infeasible configuration: " << e.what() << '\n';
        return 2;
    } catch (const nl::IoError& e) {
        std::cerr << "io error: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
