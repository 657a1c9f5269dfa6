#include "noisylabels/json_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "noisylabels/errors.hpp"

namespace noisylabels {

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty()) throw IoError("matrix_from_json: expected array of rows");
    std::size_t rows = j.size();
    std::size_t cols = j[0].size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw IoError("matrix_from_json: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

nlohmann::json vec_to_json(const Vec& v) { return nlohmann::json(v); }

Vec vec_from_json(const nlohmann::json& j) {
    if (!j.is_array()) throw IoError("vec_from_json: expected array");
    return j.get<Vec>();
}

nlohmann::json noise_matrix_to_json(const NoiseMatrix& e) {
    nlohmann::json j;
    j["entries"] = matrix_to_json(e.matrix());
    j["det"] = e.det();
    if (e.size() == 2) {
        j["e0"] = e.e0();
        j["e1"] = e.e1();
    }
    return j;
}

nlohmann::json counterexample_to_json(const CounterexamplePair& pair) {
    nlohmann::json j;
    j["E1"] = noise_matrix_to_json(pair.e1);
    j["E2"] = noise_matrix_to_json(pair.e2);
    j["p"] = vec_to_json(pair.p.probs());
    j["p_prime"] = vec_to_json(pair.p_prime.probs());
    j["witness_scores"] = vec_to_json(pair.witness_scores);
    j["argmax_under_E1"] = pair.argmax_under_e1;
    j["argmax_under_E2"] = pair.argmax_under_e2;
    return j;
}

nlohmann::json verdict_to_json(const IdentifiabilityVerdict& verdict) {
    nlohmann::json j;
    j["identifiable"] = verdict.identifiable;
    switch (verdict.reason) {
        case IdentifiabilityReason::BalancedBinary: j["reason"] = "balanced-binary"; break;
        case IdentifiabilityReason::ImbalancedBinary: j["reason"] = "imbalanced-binary"; break;
        case IdentifiabilityReason::Multiclass: j["reason"] = "multiclass"; break;
    }
    if (verdict.multiclass_witness)
        j["witness"] = counterexample_to_json(*verdict.multiclass_witness);
    if (verdict.binary_witness) {
        const auto& w = *verdict.binary_witness;
        j["witness"] = {{"eps12_a", w.eps12_a}, {"tau_a", w.tau_a},
                        {"eps12_b", w.eps12_b}, {"tau_b", w.tau_b},
                        {"scores", {w.scores.first, w.scores.second}}};
    }
    return j;
}

nlohmann::json model_to_json(const LinearModel& model, const ConvergenceReport& report,
                             TrainRule rule, std::uint64_t seed) {
    nlohmann::json j;
    j["weights"] = model.weights;
    j["bias"] = model.bias;
    j["rule"] = to_string(rule);
    j["seed"] = seed;
    j["convergence"] = {{"iters", report.iters},
                        {"grad_inf_norm", report.grad_inf_norm},
                        {"converged", report.converged}};
    return j;
}

LinearModel model_from_json(const nlohmann::json& j) {
    LinearModel m;
    m.weights = j.at("weights").get<std::vector<double>>();
    m.bias = j.at("bias").get<double>();
    return m;
}

void write_dataset_csv(const LabeledDataset& ds, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw IoError("write_dataset_csv: cannot open " + path.string());
    for (std::size_t j = 0; j < ds.dim; ++j) out << "x_" << j << ',';
    out << "y,y_noisy\n";
    char buf[40];
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = 0; j < ds.dim; ++j) {
            std::snprintf(buf, sizeof(buf), "%.17g", ds.features[i * ds.dim + j]);
            out << buf << ',';
        }
        out << ds.clean_labels[i] << ',' << ds.noisy_labels[i] << '\n';
    }

    nlohmann::json meta;
    meta["n"] = ds.n;
    meta["dim"] = ds.dim;
    meta["seed"] = ds.seed;
    meta["p1"] = ds.spec.p1;
    meta["mean_scale"] = ds.spec.mean_scale;
    meta["eps0"] = ds.eps0;
    meta["eps1"] = ds.eps1;
    std::ofstream side(path.string() + ".json");
    if (!side) throw IoError("write_dataset_csv: cannot open sidecar for " + path.string());
    side << meta.dump(2) << '\n';
}

LabeledDataset read_dataset_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_dataset_csv: cannot open " + path.string());
    std::string line;
    if (!std::getline(in, line)) throw IoError("read_dataset_csv: empty file");

    // header: x_0,...,x_{d-1},y,y_noisy
    std::size_t dim = 0;
    {
        std::stringstream ss(line);
        std::string cell;
        std::vector<std::string> cells;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (cells.size() < 3 || cells[cells.size() - 2] != "y" || cells.back() != "y_noisy")
            throw IoError("read_dataset_csv: unexpected header in " + path.string());
        dim = cells.size() - 2;
    }

    LabeledDataset ds;
    ds.dim = dim;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        for (std::size_t j = 0; j < dim; ++j) {
            if (!std::getline(ss, cell, ',')) throw IoError("read_dataset_csv: short row");
            ds.features.push_back(std::stod(cell));
        }
        if (!std::getline(ss, cell, ',')) throw IoError("read_dataset_csv: short row");
        ds.clean_labels.push_back(std::stoi(cell));
        if (!std::getline(ss, cell, ',')) throw IoError("read_dataset_csv: short row");
        ds.noisy_labels.push_back(std::stoi(cell));
    }
    ds.n = ds.clean_labels.size();

    std::ifstream side(path.string() + ".json");
    if (side) {
        nlohmann::json meta = nlohmann::json::parse(side);
        ds.seed = meta.value("seed", 0ULL);
        ds.spec.p1 = meta.value("p1", 0.5);
        ds.spec.dim = dim;
        ds.spec.mean_scale = meta.value("mean_scale", 0.5);
        ds.eps0 = meta.value("eps0", 0.0);
        ds.eps1 = meta.value("eps1", 0.0);
    }
    return ds;
}

}  // namespace noisylabels
