#pragma once

#include <occ/decision.hpp>
#include <occ/kernel.hpp>
#include <occ/ocsvm.hpp>
#include <occ/pca.hpp>
#include <occ/ssvdd.hpp>
#include <occ/svdd.hpp>

#include <json.hpp>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace occ {

enum class ClassifierType { OcSvm, Svdd, Ssvdd, SsvddR1, SsvddR2 };

std::string to_string(ClassifierType type);
ClassifierType parse_classifier_type(const std::string& text);
bool is_subspace(ClassifierType type) noexcept;
SsvddVariant variant_of(ClassifierType type);

//! One concrete hyper-parameter assignment. Fields a classifier type does
//! not consume stay empty.
struct ClassifierConfig {
    ClassifierType type = ClassifierType::Svdd;
    KernelKind kernel = KernelKind::Linear;
    double c = 0.1;
    std::optional<Eigen::Index> d;
    std::optional<double> eta;
    std::optional<double> beta;
    std::optional<double> sigma;
    long max_iters = 50;

    //! Throws InvalidArgument when a consumed field is missing.
    void validate() const;
};

using OneClassModel = std::variant<OcSvmModel, SvddModel, SsvddModel>;

OneClassModel train_classifier(const ClassifierConfig& config, const Eigen::MatrixXd& target_rows);
std::vector<Decision> classify(const OneClassModel& model, const Eigen::MatrixXd& rows);
Eigen::Index input_dim(const OneClassModel& model);

// JSON forms. Matrices are arrays of rows.
nlohmann::json config_to_json(const ClassifierConfig& config);
ClassifierConfig config_from_json(const nlohmann::json& j);

nlohmann::json kernel_to_json(const KernelSpec& kernel);
KernelSpec kernel_from_json(const nlohmann::json& j);

nlohmann::json pca_to_json(const PcaModel& model);
PcaModel pca_from_json(const nlohmann::json& j);

nlohmann::json svdd_to_json(const SvddModel& model);
SvddModel svdd_from_json(const nlohmann::json& j);

nlohmann::json ocsvm_to_json(const OcSvmModel& model);
OcSvmModel ocsvm_from_json(const nlohmann::json& j);

nlohmann::json ssvdd_to_json(const SsvddModel& model);
SsvddModel ssvdd_from_json(const nlohmann::json& j);

nlohmann::json model_to_json(const OneClassModel& model);
OneClassModel model_from_json(const nlohmann::json& j);

} // namespace occ
