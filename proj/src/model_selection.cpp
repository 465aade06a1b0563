#include <occ/error.hpp>
#include <occ/io.hpp>
#include <occ/model_selection.hpp>

#include <algorithm>
#include <atomic>
#include <thread>

namespace occ {

using nlohmann::json;

GridSpec GridSpec::defaults(ClassifierType type, KernelKind kernel) {
    GridSpec grid;
    grid.type = type;
    grid.kernel = kernel;
    grid.c_values = {0.01, 0.05, 0.1, 0.2, 0.3};
    grid.d_values = {1, 2, 3, 4, 5, 10, 20, 50, 100};
    grid.eta_values = {1e-4, 1e-3, 1e-2, 1e-1};
    grid.beta_values = {0.01, 0.1, 1, 10, 100};
    grid.sigma_values = {1e-3, 1e-2, 1e-1, 1e0, 1e1, 1e2, 1e3};
    return grid;
}

std::vector<ClassifierConfig> expand_grid(const GridSpec& grid) {
    const bool subspace = is_subspace(grid.type);
    const bool uses_beta = grid.type == ClassifierType::SsvddR1 || grid.type == ClassifierType::SsvddR2;
    const bool rbf = grid.kernel == KernelKind::Rbf;
    auto require = [&](bool ok, const char* list) {
        if (!ok) {
            throw Error(ErrorKind::InvalidArgument, std::string("grid for ") + to_string(grid.type) + " needs a non-empty " + list);
        }
    };
    require(!grid.c_values.empty(), "c_values");
    if (subspace) {
        require(!grid.d_values.empty(), "d_values");
        require(!grid.eta_values.empty(), "eta_values");
    }
    if (uses_beta) {
        require(!grid.beta_values.empty(), "beta_values");
    }
    if (rbf) {
        require(!grid.sigma_values.empty(), "sigma_values");
    }

    // A single empty slot stands in for an ignored list.
    auto slots = [](bool used, const auto& values) {
        using T = typename std::decay_t<decltype(values)>::value_type;
        std::vector<std::optional<T>> out;
        if (!used) {
            out.emplace_back();
            return out;
        }
        for (const auto& v : values) {
            out.emplace_back(v);
        }
        return out;
    };
    const auto ds = slots(subspace, grid.d_values);
    const auto etas = slots(subspace, grid.eta_values);
    const auto betas = slots(uses_beta, grid.beta_values);
    const auto sigmas = slots(rbf, grid.sigma_values);

    std::vector<ClassifierConfig> configs;
    for (double c : grid.c_values) {
        for (const auto& d : ds) {
            for (const auto& eta : etas) {
                for (const auto& beta : betas) {
                    for (const auto& sigma : sigmas) {
                        ClassifierConfig config;
                        config.type = grid.type;
                        config.kernel = grid.kernel;
                        config.c = c;
                        config.d = d;
                        config.eta = eta;
                        config.beta = beta;
                        config.sigma = sigma;
                        config.max_iters = grid.max_iters;
                        configs.push_back(config);
                    }
                }
            }
        }
    }
    return configs;
}

json grid_to_json(const GridSpec& grid) {
    return {{"classifier", to_string(grid.type)},
            {"kernel", grid.kernel == KernelKind::Rbf ? "rbf" : "linear"},
            {"c_values", grid.c_values},
            {"d_values", grid.d_values},
            {"eta_values", grid.eta_values},
            {"beta_values", grid.beta_values},
            {"sigma_values", grid.sigma_values},
            {"max_iters", grid.max_iters}};
}

GridSpec grid_from_json(const json& j) {
    try {
        const auto type = parse_classifier_type(j.at("classifier").get<std::string>());
        const auto kernel_name = j.value("kernel", std::string("linear"));
        if (kernel_name != "linear" && kernel_name != "rbf") {
            throw Error(ErrorKind::Format, "unknown kernel '" + kernel_name + "'");
        }
        GridSpec grid = GridSpec::defaults(type, kernel_name == "rbf" ? KernelKind::Rbf : KernelKind::Linear);
        if (j.contains("c_values")) grid.c_values = j.at("c_values").get<std::vector<double>>();
        if (j.contains("d_values")) grid.d_values = j.at("d_values").get<std::vector<Eigen::Index>>();
        if (j.contains("eta_values")) grid.eta_values = j.at("eta_values").get<std::vector<double>>();
        if (j.contains("beta_values")) grid.beta_values = j.at("beta_values").get<std::vector<double>>();
        if (j.contains("sigma_values")) grid.sigma_values = j.at("sigma_values").get<std::vector<double>>();
        if (j.contains("max_iters")) grid.max_iters = j.at("max_iters").get<long>();
        return grid;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Format, std::string("malformed grid config: ") + e.what());
    }
}

EvalReport evaluate_config(const ClassifierConfig& config, const Eigen::MatrixXd& target_rows,
                           const FeatureMatrix& validation, const std::string& target_class) {
    const OneClassModel model = train_classifier(config, target_rows);
    const auto decisions = classify(model, validation.data());
    std::vector<Prediction> predictions;
    std::vector<Truth> truth;
    predictions.reserve(validation.size());
    truth.reserve(validation.size());
    for (std::size_t i = 0; i < validation.size(); ++i) {
        predictions.push_back({validation.ids()[i], decisions[i].is_target});
        truth.push_back({validation.ids()[i], validation.labels()[i] == target_class});
    }
    return evaluate(predictions, truth);
}

SelectionResult grid_search(const FeatureMatrix& train_target, const FeatureMatrix& validation,
                            const std::string& target_class, const GridSpec& grid, std::uint64_t seed,
                            unsigned jobs) {
    const auto& labels = validation.labels();
    const auto targets = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), target_class));
    if (targets == 0 || targets == labels.size()) {
        throw Error(ErrorKind::EmptyValidationClass,
                    "validation set needs both target and outlier samples (targets=" + std::to_string(targets) +
                        ", total=" + std::to_string(labels.size()) + ")");
    }
    if (train_target.dim() != validation.dim()) {
        throw Error(ErrorKind::DimensionMismatch, "training and validation features differ in dimensionality");
    }

    const auto configs = expand_grid(grid);
    struct Outcome {
        std::optional<EvalReport> report;
        std::string error;
    };
    std::vector<Outcome> outcomes(configs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < configs.size(); i = next++) {
            try {
                outcomes[i].report = evaluate_config(configs[i], train_target.data(), validation, target_class);
            } catch (const std::exception& e) {
                outcomes[i].error = e.what();
            }
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(configs.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(worker);
        }
    }

    SelectionResult result;
    result.seed = seed;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (outcomes[i].report) {
            result.leaderboard.push_back({i, configs[i], *outcomes[i].report, outcomes[i].report->gm.value_or(0.0)});
        } else {
            result.failures.push_back({i, configs[i], outcomes[i].error});
        }
    }
    if (result.leaderboard.empty()) {
        throw Error(ErrorKind::AllConfigsFailed, "every grid point failed; first error: " + result.failures.front().error);
    }
    std::stable_sort(result.leaderboard.begin(), result.leaderboard.end(),
                     [](const LeaderboardEntry& a, const LeaderboardEntry& b) { return a.gm > b.gm; });
    result.best_config = result.leaderboard.front().config;
    result.best_validation_gm = result.leaderboard.front().gm;
    return result;
}

std::string leaderboard_csv(const SelectionResult& result) {
    std::string out = "config_json,gm,tpr,tp,flagged\n";
    for (const auto& entry : result.leaderboard) {
        out += io::csv_field(config_to_json(entry.config).dump());
        out += ',';
        out += io::format_double(entry.gm);
        out += ',';
        out += io::format_double(entry.report.tpr.value_or(0.0));
        out += ',';
        out += std::to_string(entry.report.tp);
        out += ',';
        out += std::to_string(entry.report.flagged());
        out += '\n';
    }
    return out;
}

} // namespace occ
