#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "noisylabels/datagen.hpp"
#include "noisylabels/identifiability.hpp"
#include "noisylabels/learners.hpp"
#include "noisylabels/simplex.hpp"

namespace noisylabels {

// Matrices serialize as arrays of rows (row-major); vectors as flat arrays.
nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

nlohmann::json vec_to_json(const Vec& v);
Vec vec_from_json(const nlohmann::json& j);

nlohmann::json noise_matrix_to_json(const NoiseMatrix& e);
nlohmann::json counterexample_to_json(const CounterexamplePair& pair);
nlohmann::json verdict_to_json(const IdentifiabilityVerdict& verdict);

nlohmann::json model_to_json(const LinearModel& model, const ConvergenceReport& report,
                             TrainRule rule, std::uint64_t seed);
LinearModel model_from_json(const nlohmann::json& j);

// CSV columns x_0..x_{d-1},y,y_noisy plus a JSON sidecar (path + ".json")
// recording spec, rates and seed.
void write_dataset_csv(const LabeledDataset& ds, const std::filesystem::path& path);
LabeledDataset read_dataset_csv(const std::filesystem::path& path);

}  // namespace noisylabels
