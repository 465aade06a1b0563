#include <occ/classifier.hpp>
#include <occ/cli.hpp>
#include <occ/dataset.hpp>
#include <occ/error.hpp>
#include <occ/io.hpp>
#include <occ/metrics.hpp>
#include <occ/model_selection.hpp>
#include <occ/pca.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <numeric>
#include <optional>
#include <ostream>

namespace occ::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json read_json(const fs::path& path) {
    const std::string text = io::read_file(path);
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Format, path.string() + ": " + e.what());
    }
}

void write_json(const fs::path& path, const json& j) {
    io::write_file_atomic(path, j.dump(2) + "\n");
}

std::string pca_fingerprint(const PcaModel& pca) {
    return io::fingerprint(pca_to_json(pca).dump());
}

struct LoadedPca {
    PcaModel model;
    std::string fingerprint;
};

std::optional<LoadedPca> load_pca(const std::string& path) {
    if (path.empty()) {
        return std::nullopt;
    }
    PcaModel model = pca_from_json(read_json(path));
    std::string fp = pca_fingerprint(model);
    return LoadedPca{std::move(model), std::move(fp)};
}

FeatureMatrix maybe_project(const std::optional<LoadedPca>& pca, const FeatureMatrix& features) {
    return pca ? project(pca->model, features) : features;
}

// Splits one CSV line on commas, honouring double-quoted fields.
std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (quoted) {
            if (ch == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                ++i;
            } else if (ch == '"') {
                quoted = false;
            } else {
                cells.back() += ch;
            }
        } else if (ch == '"') {
            quoted = true;
        } else if (ch == ',') {
            cells.emplace_back();
        } else {
            cells.back() += ch;
        }
    }
    return cells;
}

// Reads a headed CSV and returns the requested columns of every row.
std::vector<std::vector<std::string>> read_columns(const fs::path& path, const std::vector<std::string>& wanted) {
    const std::string text = io::read_file(path);
    std::vector<std::string_view> lines;
    std::string_view rest(text);
    while (!rest.empty()) {
        std::size_t nl = rest.find('\n');
        std::string_view line = rest.substr(0, nl);
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (!line.empty()) {
            lines.push_back(line);
        }
        if (nl == std::string_view::npos) {
            break;
        }
        rest.remove_prefix(nl + 1);
    }
    if (lines.empty()) {
        throw Error(ErrorKind::EmptyFile, path.string() + " is empty");
    }
    const auto header = split_csv_line(lines.front());
    std::vector<std::size_t> index;
    for (const auto& name : wanted) {
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw Error(ErrorKind::MalformedRow, path.string() + ": missing column '" + name + "'");
        }
        index.push_back(static_cast<std::size_t>(it - header.begin()));
    }
    std::vector<std::vector<std::string>> rows;
    rows.reserve(lines.size() - 1);
    for (std::size_t r = 1; r < lines.size(); ++r) {
        auto cells = split_csv_line(lines[r]);
        if (cells.size() != header.size()) {
            throw Error(ErrorKind::MalformedRow, path.string() + ": line " + std::to_string(r + 1) +
                                                     " has " + std::to_string(cells.size()) + " columns");
        }
        std::vector<std::string> picked;
        for (auto i : index) {
            picked.push_back(std::move(cells[i]));
        }
        rows.push_back(std::move(picked));
    }
    return rows;
}

std::vector<Truth> read_truth(const fs::path& path, const std::string& target_class) {
    std::vector<Truth> truth;
    for (auto& row : read_columns(path, {"id", "label"})) {
        truth.push_back({std::move(row[0]), row[1] == target_class});
    }
    return truth;
}

void print_report(std::ostream& out, const EvalReport& report) {
    out << "TPR GM TP TP+FP\n" << format_table_row(report) << "\n";
}

// ---------------------------------------------------------------------------

struct FitPcaArgs {
    std::string train;
    std::string target_class;
    long k = 100;
    std::string out;
};

int fit_pca_cmd(const FitPcaArgs& a, std::ostream& out) {
    const FeatureMatrix features = load_features(a.train);
    const TargetSplit split = split_by_target(features, a.target_class);
    const PcaModel model = fit_pca(split.target, a.k);
    write_json(a.out, pca_to_json(model));
    const double total = total_variance(split.target.data());
    const double kept = model.explained_variance.sum();
    const double fraction = total > 0.0 ? kept / total : 0.0;
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", fraction);
    out << "k=" << model.k() << " explained_variance_fraction=" << buf << "\n";
    return 0;
}

struct TrainArgs {
    std::string train;
    std::string pca;
    std::string target_class;
    std::string classifier = "svdd";
    std::string kernel = "linear";
    std::optional<double> sigma;
    double c = 0.1;
    std::optional<long> d;
    std::optional<double> eta;
    std::optional<double> beta;
    long max_iters = 50;
    std::string out;
};

json model_file(const OneClassModel& model, const ClassifierConfig& config, const std::string& target_class,
                const std::optional<LoadedPca>& pca) {
    json j = model_to_json(model);
    j["target_class"] = target_class;
    j["config"] = config_to_json(config);
    j["pca_fingerprint"] = pca ? json(pca->fingerprint) : json();
    return j;
}

int train_cmd(const TrainArgs& a, std::ostream& out) {
    ClassifierConfig config;
    config.type = parse_classifier_type(a.classifier);
    config.kernel = a.kernel == "rbf" ? KernelKind::Rbf : KernelKind::Linear;
    config.c = a.c;
    if (a.kernel == "rbf") config.sigma = a.sigma;
    if (is_subspace(config.type)) {
        if (a.d) config.d = *a.d;
        config.eta = a.eta;
        if (config.type != ClassifierType::Ssvdd) config.beta = a.beta;
    }
    config.max_iters = a.max_iters;
    config.validate();

    const auto pca = load_pca(a.pca);
    const FeatureMatrix features = load_features(a.train);
    const FeatureMatrix target = maybe_project(pca, split_by_target(features, a.target_class).target);
    const OneClassModel model = train_classifier(config, target.data());
    write_json(a.out, model_file(model, config, a.target_class, pca));

    out << "trained " << to_string(config.type) << " on " << target.size() << " samples (D=" << target.dim() << ")";
    if (const auto* s = std::get_if<SsvddModel>(&model)) {
        out << " iterations_run=" << s->iterations_run;
    }
    out << "\n";
    return 0;
}

struct GridArgs {
    std::string train;
    std::string validation;
    std::string pca;
    std::string target_class;
    std::string grid;
    std::string classifier;
    std::string kernel = "linear";
    std::string out_leaderboard;
    std::string out_model;
    unsigned jobs = 1;
    std::uint64_t seed = 42;
};

int grid_cmd(const GridArgs& a, std::ostream& out, std::ostream& err) {
    GridSpec grid;
    if (!a.grid.empty()) {
        grid = grid_from_json(read_json(a.grid));
    } else if (!a.classifier.empty()) {
        grid = GridSpec::defaults(parse_classifier_type(a.classifier),
                                  a.kernel == "rbf" ? KernelKind::Rbf : KernelKind::Linear);
    } else {
        throw Error(ErrorKind::InvalidArgument, "pass --grid or --classifier");
    }
    const auto pca = load_pca(a.pca);
    const FeatureMatrix train = maybe_project(pca, split_by_target(load_features(a.train), a.target_class).target);
    const FeatureMatrix validation = maybe_project(pca, load_features(a.validation));

    const SelectionResult result = grid_search(train, validation, a.target_class, grid, a.seed, a.jobs);
    for (const auto& f : result.failures) {
        err << "skipped " << config_to_json(f.config).dump() << ": " << f.error << "\n";
    }
    if (!a.out_model.empty()) {
        const OneClassModel best = train_classifier(result.best_config, train.data());
        write_json(a.out_model, model_file(best, result.best_config, a.target_class, pca));
    }
    io::write_file_atomic(a.out_leaderboard, leaderboard_csv(result));
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", result.best_validation_gm);
    out << "evaluated " << result.leaderboard.size() << " configs (" << result.failures.size() << " skipped)\n"
        << "best " << config_to_json(result.best_config).dump() << " gm=" << buf << "\n";
    return 0;
}

struct TriageArgs {
    std::string features;
    std::string pca;
    std::string model;
    std::string truth;
    std::string target_class;
    std::string out_dir;
};

int triage_cmd(const TriageArgs& a, std::ostream& out) {
    const json model_json = read_json(a.model);
    const OneClassModel model = model_from_json(model_json);
    const auto pca = load_pca(a.pca);

    const json& expected = model_json.contains("pca_fingerprint") ? model_json.at("pca_fingerprint") : json();
    if (expected.is_null() && pca) {
        throw Error(ErrorKind::ModelMismatch, "model was trained without PCA but --pca was given");
    }
    if (expected.is_string() && (!pca || expected.get<std::string>() != pca->fingerprint)) {
        throw Error(ErrorKind::ModelMismatch, pca ? "PCA model differs from the one the classifier was trained with"
                                                  : "classifier was trained on PCA features; pass its --pca model");
    }

    std::string target_class = a.target_class;
    if (target_class.empty() && model_json.contains("target_class")) {
        target_class = model_json.at("target_class").get<std::string>();
    }

    const FeatureMatrix features = maybe_project(pca, load_features(a.features));
    if (features.dim() != input_dim(model)) {
        throw Error(ErrorKind::DimensionMismatch, "classifier expects " + std::to_string(input_dim(model)) +
                                                      "-d features, got " + std::to_string(features.dim()));
    }
    std::vector<Decision> decisions = classify(model, features.data());
    std::optional<EvalReport> report;
    if (!a.truth.empty()) {
        std::vector<Prediction> predictions;
        predictions.reserve(features.size());
        for (std::size_t i = 0; i < features.size(); ++i) {
            predictions.push_back({features.ids()[i], decisions[i].is_target});
        }
        report = evaluate(predictions, read_truth(a.truth, target_class));
    }

    std::vector<std::size_t> order(features.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return decisions[x].margin > decisions[y].margin; });

    std::string flagged;
    std::string scores = "id,score,decision\n";
    std::size_t flagged_count = 0;
    for (std::size_t i = 0; i < features.size(); ++i) {
        if (decisions[i].is_target) {
            flagged += features.ids()[i] + "\n";
            ++flagged_count;
        }
    }
    for (auto i : order) {
        scores += features.ids()[i] + "," + io::format_double(decisions[i].margin) + "," +
                  (decisions[i].is_target ? "target" : "outlier") + "\n";
    }

    const fs::path dir(a.out_dir);
    fs::create_directories(dir);
    io::write_file_atomic(dir / "scores.csv", scores);
    if (report) {
        io::write_file_atomic(dir / "report.json", report_to_json(*report));
    }
    io::write_file_atomic(dir / "flagged.txt", flagged);

    out << "flagged " << flagged_count << " of " << features.size() << " samples\n";
    if (report) {
        print_report(out, *report);
    }
    return 0;
}

struct EvaluateArgs {
    std::string scores;
    std::string truth;
    std::string target_class;
    std::string out;
};

int evaluate_cmd(const EvaluateArgs& a, std::ostream& out) {
    std::vector<Prediction> predictions;
    for (auto& row : read_columns(a.scores, {"id", "decision"})) {
        if (row[1] != "target" && row[1] != "outlier") {
            throw Error(ErrorKind::Format, "decision must be 'target' or 'outlier', got '" + row[1] + "'");
        }
        predictions.push_back({std::move(row[0]), row[1] == "target"});
    }
    const EvalReport report = evaluate(predictions, read_truth(a.truth, a.target_class));
    if (!a.out.empty()) {
        io::write_file_atomic(a.out, report_to_json(report));
    }
    print_report(out, report);
    return 0;
}

struct SynthArgs {
    std::string out;
    long dim = 10;
    long targets = 200;
    long outliers = 800;
    double separation = 6.0;
    std::string target_label = "target";
    std::string outlier_label = "other";
    std::uint64_t seed = 42;
};

int synth_cmd(const SynthArgs& a, std::ostream& out) {
    const Eigen::Index dim = a.dim;
    BlobSpec target{Eigen::VectorXd::Zero(dim), Eigen::MatrixXd::Identity(dim, dim),
                    static_cast<std::size_t>(a.targets), a.target_label};
    BlobSpec other{Eigen::VectorXd::Zero(dim), Eigen::MatrixXd::Identity(dim, dim),
                   static_cast<std::size_t>(a.outliers), a.outlier_label};
    other.mean(0) = a.separation;
    const FeatureMatrix features = generate_synthetic({{target, other}, a.seed});
    save_features(features, a.out);
    out << "wrote " << features.size() << " samples (D=" << features.dim() << ")\n";
    return 0;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"One-class classification toolkit for rare-class triage"};
    app.require_subcommand(1);
    std::uint64_t seed = 42;
    app.add_option("--seed", seed, "Seed for stochastic steps")->capture_default_str();

    FitPcaArgs fp;
    auto* fit = app.add_subcommand("fit-pca", "Fit PCA on the target-class rows of a feature file");
    fit->add_option("--train", fp.train, "Training feature CSV")->required();
    fit->add_option("--target-class", fp.target_class, "Target class label")->required();
    fit->add_option("--k", fp.k, "Principal components to keep")->capture_default_str()->check(CLI::PositiveNumber);
    fit->add_option("--out", fp.out, "Output PCA model JSON")->required();

    TrainArgs tr;
    auto* train = app.add_subcommand("train", "Train a one-class classifier on the target-class rows");
    train->add_option("--train", tr.train, "Training feature CSV")->required();
    train->add_option("--pca", tr.pca, "PCA model JSON applied before training");
    train->add_option("--target-class", tr.target_class, "Target class label")->required();
    train->add_option("--classifier", tr.classifier)
        ->check(CLI::IsMember({"ocsvm", "svdd", "ssvdd", "ssvdd-r1", "ssvdd-r2"}))
        ->capture_default_str();
    train->add_option("--kernel", tr.kernel)->check(CLI::IsMember({"linear", "rbf"}))->capture_default_str();
    train->add_option("--sigma", tr.sigma, "RBF width");
    train->add_option("--c", tr.c)->capture_default_str();
    train->add_option("--d", tr.d, "Subspace dimensionality");
    train->add_option("--eta", tr.eta, "Subspace learning rate");
    train->add_option("--beta", tr.beta, "Regularizer weight");
    train->add_option("--max-iters", tr.max_iters)->capture_default_str()->check(CLI::PositiveNumber);
    train->add_option("--out", tr.out, "Output model JSON")->required();

    GridArgs gr;
    auto* grid = app.add_subcommand("grid-search", "Select hyper-parameters by validation GM");
    grid->add_option("--train", gr.train, "Training feature CSV")->required();
    grid->add_option("--validation", gr.validation, "Validation feature CSV (mixed labels)")->required();
    grid->add_option("--pca", gr.pca, "PCA model JSON applied to both sets");
    grid->add_option("--target-class", gr.target_class)->required();
    grid->add_option("--grid", gr.grid, "Grid config JSON");
    grid->add_option("--classifier", gr.classifier, "Use the default grid for this classifier")
        ->check(CLI::IsMember({"ocsvm", "svdd", "ssvdd", "ssvdd-r1", "ssvdd-r2"}));
    grid->add_option("--kernel", gr.kernel)->check(CLI::IsMember({"linear", "rbf"}))->capture_default_str();
    grid->add_option("--out-leaderboard", gr.out_leaderboard, "Leaderboard CSV")->required();
    grid->add_option("--out-model", gr.out_model, "Best model JSON, retrained on the training set");
    grid->add_option("--jobs", gr.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);

    TriageArgs tg;
    auto* triage = app.add_subcommand("triage", "Score samples and list the ones flagged for inspection");
    triage->add_option("--features", tg.features, "Feature CSV to score")->required();
    triage->add_option("--pca", tg.pca, "PCA model JSON the classifier was trained with");
    triage->add_option("--model", tg.model, "Classifier model JSON")->required();
    triage->add_option("--truth", tg.truth, "Ground-truth CSV with id and label columns");
    triage->add_option("--target-class", tg.target_class, "Overrides the model's target class");
    triage->add_option("--out-dir", tg.out_dir, "Directory for flagged.txt, scores.csv, report.json")->required();

    EvaluateArgs ev;
    auto* evaluate_app = app.add_subcommand("evaluate", "Score triage decisions against ground truth");
    evaluate_app->add_option("--scores", ev.scores, "scores.csv written by triage")->required();
    evaluate_app->add_option("--truth", ev.truth, "Ground-truth CSV with id and label columns")->required();
    evaluate_app->add_option("--target-class", ev.target_class)->required();
    evaluate_app->add_option("--out", ev.out, "Report JSON");

    SynthArgs sy;
    auto* synth = app.add_subcommand("synth", "Write a two-blob synthetic feature file");
    synth->add_option("--out", sy.out)->required();
    synth->add_option("--dim", sy.dim)->capture_default_str()->check(CLI::PositiveNumber);
    synth->add_option("--targets", sy.targets)->capture_default_str()->check(CLI::PositiveNumber);
    synth->add_option("--outliers", sy.outliers)->capture_default_str()->check(CLI::PositiveNumber);
    synth->add_option("--separation", sy.separation)->capture_default_str();
    synth->add_option("--target-label", sy.target_label)->capture_default_str();
    synth->add_option("--outlier-label", sy.outlier_label)->capture_default_str();

    std::vector<const char*> argv{"occ"};
    for (const auto& arg : args) {
        argv.push_back(arg.c_str());
    }
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*fit) return fit_pca_cmd(fp, out);
        if (*train) return train_cmd(tr, out);
        if (*grid) {
            gr.seed = seed;
            return grid_cmd(gr, out, err);
        }
        if (*triage) return triage_cmd(tg, out);
        if (*evaluate_app) return evaluate_cmd(ev, out);
        if (*synth) {
            sy.seed = seed;
            return synth_cmd(sy, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

} // namespace occ::cli
