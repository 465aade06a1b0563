#pragma once

#include <occ/classifier.hpp>
#include <occ/dataset.hpp>
#include <occ/metrics.hpp>

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace occ {

//! Hyper-parameter lists; a config is drawn from their Cartesian product in
//! the declared order c, d, eta, beta, sigma (c varies slowest). Lists the
//! classifier type does not consume are ignored.
struct GridSpec {
    ClassifierType type = ClassifierType::Svdd;
    KernelKind kernel = KernelKind::Linear;
    std::vector<double> c_values;
    std::vector<Eigen::Index> d_values;
    std::vector<double> eta_values;
    std::vector<double> beta_values;
    std::vector<double> sigma_values;
    long max_iters = 50;

    //! The standard grids for every list.
    static GridSpec defaults(ClassifierType type, KernelKind kernel);
};

std::vector<ClassifierConfig> expand_grid(const GridSpec& grid);

nlohmann::json grid_to_json(const GridSpec& grid);
//! Missing lists fall back to the defaults.
GridSpec grid_from_json(const nlohmann::json& j);

struct LeaderboardEntry {
    std::size_t grid_index = 0;
    ClassifierConfig config;
    EvalReport report;
    double gm = 0.0;
};

struct FailedConfig {
    std::size_t grid_index = 0;
    ClassifierConfig config;
    std::string error;
};

struct SelectionResult {
    ClassifierConfig best_config;
    double best_validation_gm = 0.0;
    std::vector<LeaderboardEntry> leaderboard; // GM descending, then grid order
    std::vector<FailedConfig> failures;        // grid order
    std::uint64_t seed = 0;
};

//! Trains on `target_rows`, classifies `validation`, and scores against its labels.
EvalReport evaluate_config(const ClassifierConfig& config, const Eigen::MatrixXd& target_rows,
                           const FeatureMatrix& validation, const std::string& target_class);

//! Every grid point is trained on the target training rows only and ranked
//! by validation GM. `jobs` workers share the grid; the result does not
//! depend on their number. The training path is deterministic, so `seed`
//! is only recorded.
SelectionResult grid_search(const FeatureMatrix& train_target, const FeatureMatrix& validation,
                            const std::string& target_class, const GridSpec& grid, std::uint64_t seed,
                            unsigned jobs = 1);

//! `config_json,gm,tpr,tp,flagged`, one row per leaderboard entry.
std::string leaderboard_csv(const SelectionResult& result);

} // namespace occ
