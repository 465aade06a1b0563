#include <occ/classifier.hpp>
#include <occ/error.hpp>

namespace occ {

using nlohmann::json;

std::string to_string(ClassifierType type) {
    switch (type) {
    case ClassifierType::OcSvm: return "ocsvm";
    case ClassifierType::Svdd: return "svdd";
    case ClassifierType::Ssvdd: return "ssvdd";
    case ClassifierType::SsvddR1: return "ssvdd-r1";
    case ClassifierType::SsvddR2: return "ssvdd-r2";
    }
    return "svdd";
}

ClassifierType parse_classifier_type(const std::string& text) {
    if (text == "ocsvm") return ClassifierType::OcSvm;
    if (text == "svdd") return ClassifierType::Svdd;
    if (text == "ssvdd") return ClassifierType::Ssvdd;
    if (text == "ssvdd-r1") return ClassifierType::SsvddR1;
    if (text == "ssvdd-r2") return ClassifierType::SsvddR2;
    throw Error(ErrorKind::InvalidArgument, "unknown classifier '" + text + "'");
}

bool is_subspace(ClassifierType type) noexcept {
    return type == ClassifierType::Ssvdd || type == ClassifierType::SsvddR1 || type == ClassifierType::SsvddR2;
}

SsvddVariant variant_of(ClassifierType type) {
    switch (type) {
    case ClassifierType::SsvddR1: return SsvddVariant::R1;
    case ClassifierType::SsvddR2: return SsvddVariant::R2;
    default: return SsvddVariant::Plain;
    }
}

void ClassifierConfig::validate() const {
    auto require = [this](bool present, const char* what) {
        if (!present) {
            throw Error(ErrorKind::InvalidArgument, to_string(type) + " needs " + what);
        }
    };
    if (kernel == KernelKind::Rbf) {
        require(sigma.has_value(), "sigma for the rbf kernel");
    }
    if (is_subspace(type)) {
        require(d.has_value(), "d");
        require(eta.has_value(), "eta");
        if (type != ClassifierType::Ssvdd) {
            require(beta.has_value(), "beta");
        }
    }
}

OneClassModel train_classifier(const ClassifierConfig& config, const Eigen::MatrixXd& target_rows) {
    config.validate();
    const KernelSpec kernel =
        config.kernel == KernelKind::Rbf ? KernelSpec::rbf(*config.sigma) : KernelSpec::linear();
    switch (config.type) {
    case ClassifierType::OcSvm: return train_ocsvm(target_rows, config.c, kernel);
    case ClassifierType::Svdd: return train_svdd(target_rows, config.c, kernel);
    default: break;
    }
    SsvddParams params;
    params.c = config.c;
    params.d = *config.d;
    params.eta = *config.eta;
    params.beta = config.beta.value_or(0.0);
    params.variant = variant_of(config.type);
    params.max_iters = config.max_iters;
    if (config.kernel == KernelKind::Rbf) {
        params.rbf_sigma = config.sigma;
    }
    return train_ssvdd(target_rows, params);
}

std::vector<Decision> classify(const OneClassModel& model, const Eigen::MatrixXd& rows) {
    return std::visit(
        [&rows](const auto& m) -> std::vector<Decision> {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, OcSvmModel>) {
                return ocsvm_classify_batch(m, rows);
            } else if constexpr (std::is_same_v<T, SvddModel>) {
                return svdd_classify_batch(m, rows);
            } else {
                return ssvdd_classify_batch(m, rows);
            }
        },
        model);
}

Eigen::Index input_dim(const OneClassModel& model) {
    return std::visit([](const auto& m) { return m.input_dim(); }, model);
}

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
    return json(std::vector<double>(v.data(), v.data() + v.size()));
}

Eigen::VectorXd vector_from_json(const json& j) {
    auto values = j.get<std::vector<double>>();
    return Eigen::Map<Eigen::VectorXd>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json matrix_to_json(const Eigen::MatrixXd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(m(r, c));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j, Eigen::Index cols_if_empty) {
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) {
        return Eigen::MatrixXd(0, cols_if_empty);
    }
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const json& row = j.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != cols) {
            throw Error(ErrorKind::Format, "ragged matrix in model file");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = row.at(static_cast<std::size_t>(c)).get<double>();
        }
    }
    return m;
}

template <typename Fn>
auto guarded(const char* what, Fn&& fn) {
    try {
        return fn();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Format, std::string("malformed ") + what + ": " + e.what());
    }
}

void expect_type(const json& j, const char* type) {
    if (j.at("type").get<std::string>() != type) {
        throw Error(ErrorKind::Format, std::string("expected a model of type '") + type + "'");
    }
}

} // namespace

json config_to_json(const ClassifierConfig& config) {
    json j = {{"classifier", to_string(config.type)},
              {"kernel", config.kernel == KernelKind::Rbf ? "rbf" : "linear"},
              {"c", config.c}};
    if (config.d) j["d"] = *config.d;
    if (config.eta) j["eta"] = *config.eta;
    if (config.beta) j["beta"] = *config.beta;
    if (config.sigma) j["sigma"] = *config.sigma;
    return j;
}

ClassifierConfig config_from_json(const json& j) {
    return guarded("classifier config", [&] {
        ClassifierConfig config;
        config.type = parse_classifier_type(j.at("classifier").get<std::string>());
        const auto kernel = j.value("kernel", std::string("linear"));
        if (kernel != "linear" && kernel != "rbf") {
            throw Error(ErrorKind::Format, "unknown kernel '" + kernel + "'");
        }
        config.kernel = kernel == "rbf" ? KernelKind::Rbf : KernelKind::Linear;
        config.c = j.at("c").get<double>();
        if (j.contains("d")) config.d = j.at("d").get<Eigen::Index>();
        if (j.contains("eta")) config.eta = j.at("eta").get<double>();
        if (j.contains("beta")) config.beta = j.at("beta").get<double>();
        if (j.contains("sigma")) config.sigma = j.at("sigma").get<double>();
        return config;
    });
}

json kernel_to_json(const KernelSpec& kernel) {
    if (kernel.kind() == KernelKind::Linear) {
        return {{"kind", "linear"}};
    }
    return {{"kind", "rbf"}, {"sigma", kernel.sigma()}};
}

KernelSpec kernel_from_json(const json& j) {
    return guarded("kernel", [&] {
        const auto kind = j.at("kind").get<std::string>();
        if (kind == "linear") return KernelSpec::linear();
        if (kind == "rbf") return KernelSpec::rbf(j.at("sigma").get<double>());
        throw Error(ErrorKind::Format, "unknown kernel kind '" + kind + "'");
    });
}

json pca_to_json(const PcaModel& model) {
    return {{"mean", vector_to_json(model.mean)},
            {"components", matrix_to_json(model.components)},
            {"explained_variance", vector_to_json(model.explained_variance)},
            {"k", model.k()},
            {"d_input", model.input_dim()}};
}

PcaModel pca_from_json(const json& j) {
    return guarded("PCA model", [&] {
        PcaModel model;
        model.mean = vector_from_json(j.at("mean"));
        model.components = matrix_from_json(j.at("components"), model.mean.size());
        model.explained_variance = vector_from_json(j.at("explained_variance"));
        if (model.k() != j.at("k").get<Eigen::Index>() || model.input_dim() != j.at("d_input").get<Eigen::Index>() ||
            model.components.cols() != model.input_dim() || model.explained_variance.size() != model.k()) {
            throw Error(ErrorKind::Format, "PCA model shapes are inconsistent");
        }
        return model;
    });
}

json svdd_to_json(const SvddModel& model) {
    return {{"type", "svdd"},
            {"kernel", kernel_to_json(model.kernel)},
            {"c", model.c},
            {"alphas", vector_to_json(model.alphas)},
            {"support_indices", model.support_indices},
            {"support_vectors", matrix_to_json(model.support_vectors)},
            {"d_input", model.input_dim()},
            {"r_squared", model.r_squared},
            {"center_self_term", model.center_self_term}};
}

SvddModel svdd_from_json(const json& j) {
    return guarded("SVDD model", [&] {
        expect_type(j, "svdd");
        SvddModel model;
        model.kernel = kernel_from_json(j.at("kernel"));
        model.c = j.at("c").get<double>();
        model.alphas = vector_from_json(j.at("alphas"));
        model.support_indices = j.at("support_indices").get<std::vector<std::size_t>>();
        model.support_vectors = matrix_from_json(j.at("support_vectors"), j.at("d_input").get<Eigen::Index>());
        model.r_squared = j.at("r_squared").get<double>();
        model.center_self_term = j.at("center_self_term").get<double>();
        if (model.support_indices.size() != static_cast<std::size_t>(model.support_vectors.rows())) {
            throw Error(ErrorKind::Format, "support_indices and support_vectors differ in length");
        }
        for (auto idx : model.support_indices) {
            if (idx >= static_cast<std::size_t>(model.alphas.size())) {
                throw Error(ErrorKind::Format, "support index out of range");
            }
        }
        return model;
    });
}

json ocsvm_to_json(const OcSvmModel& model) {
    return {{"type", "ocsvm"},
            {"kernel", kernel_to_json(model.kernel)},
            {"c", model.c},
            {"alphas", vector_to_json(model.alphas)},
            {"support_indices", model.support_indices},
            {"support_vectors", matrix_to_json(model.support_vectors)},
            {"d_input", model.input_dim()},
            {"rho", model.rho}};
}

OcSvmModel ocsvm_from_json(const json& j) {
    return guarded("OC-SVM model", [&] {
        expect_type(j, "ocsvm");
        OcSvmModel model;
        model.kernel = kernel_from_json(j.at("kernel"));
        model.c = j.at("c").get<double>();
        model.alphas = vector_from_json(j.at("alphas"));
        model.support_indices = j.at("support_indices").get<std::vector<std::size_t>>();
        model.support_vectors = matrix_from_json(j.at("support_vectors"), j.at("d_input").get<Eigen::Index>());
        model.rho = j.at("rho").get<double>();
        if (model.support_indices.size() != static_cast<std::size_t>(model.support_vectors.rows())) {
            throw Error(ErrorKind::Format, "support_indices and support_vectors differ in length");
        }
        for (auto idx : model.support_indices) {
            if (idx >= static_cast<std::size_t>(model.alphas.size())) {
                throw Error(ErrorKind::Format, "support index out of range");
            }
        }
        return model;
    });
}

json ssvdd_to_json(const SsvddModel& model) {
    json j = {{"type", "ssvdd"},
              {"variant", to_string(model.variant)},
              {"c", model.c},
              {"q", matrix_to_json(model.q)},
              {"eta", model.eta},
              {"beta", model.beta},
              {"d", model.d()},
              {"iterations_run", model.iterations_run},
              {"inner", svdd_to_json(model.inner)}};
    if (model.embedding) {
        const auto& emb = *model.embedding;
        j["kernel_mode"] = kernel_to_json(emb.kernel);
        j["embedding"] = {{"train_rows", matrix_to_json(emb.train_rows)},
                          {"gram_col_means", vector_to_json(emb.gram_col_means)},
                          {"gram_mean", emb.gram_mean},
                          {"coefficients", matrix_to_json(emb.coefficients)}};
    } else {
        j["kernel_mode"] = kernel_to_json(KernelSpec::linear());
    }
    return j;
}

SsvddModel ssvdd_from_json(const json& j) {
    return guarded("S-SVDD model", [&] {
        expect_type(j, "ssvdd");
        SsvddModel model;
        model.variant = parse_ssvdd_variant(j.at("variant").get<std::string>());
        model.c = j.at("c").get<double>();
        model.q = matrix_from_json(j.at("q"), 0);
        model.eta = j.at("eta").get<double>();
        model.beta = j.at("beta").get<double>();
        model.iterations_run = j.at("iterations_run").get<long>();
        model.inner = svdd_from_json(j.at("inner"));
        const KernelSpec mode = kernel_from_json(j.at("kernel_mode"));
        if (mode.kind() == KernelKind::Rbf) {
            const json& e = j.at("embedding");
            RbfEmbedding emb;
            emb.kernel = mode;
            emb.train_rows = matrix_from_json(e.at("train_rows"), 0);
            emb.gram_col_means = vector_from_json(e.at("gram_col_means"));
            emb.gram_mean = e.at("gram_mean").get<double>();
            emb.coefficients = matrix_from_json(e.at("coefficients"), 0);
            if (emb.coefficients.rows() != emb.train_rows.rows() || emb.coefficients.cols() != model.q.cols()) {
                throw Error(ErrorKind::Format, "embedding shapes are inconsistent");
            }
            model.embedding = std::move(emb);
        }
        if (model.d() != j.at("d").get<Eigen::Index>() || model.inner.input_dim() != model.d()) {
            throw Error(ErrorKind::Format, "S-SVDD projection and inner model disagree");
        }
        return model;
    });
}

json model_to_json(const OneClassModel& model) {
    return std::visit(
        [](const auto& m) -> json {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, OcSvmModel>) {
                return ocsvm_to_json(m);
            } else if constexpr (std::is_same_v<T, SvddModel>) {
                return svdd_to_json(m);
            } else {
                return ssvdd_to_json(m);
            }
        },
        model);
}

OneClassModel model_from_json(const json& j) {
    const auto type = guarded("model", [&] { return j.at("type").get<std::string>(); });
    if (type == "svdd") return svdd_from_json(j);
    if (type == "ocsvm") return ocsvm_from_json(j);
    if (type == "ssvdd") return ssvdd_from_json(j);
    throw Error(ErrorKind::Format, "unknown model type '" + type + "'");
}

} // namespace occ
