#pragma once

#include <occ/dataset.hpp>
#include <occ/decision.hpp>
#include <occ/dual_solver.hpp>
#include <occ/kernel.hpp>

#include <Eigen/Dense>

#include <vector>

namespace occ {

//! Hyperplane separating the data from the origin: f(x) = sum_i alpha_i k(x_i, x) - rho.
//! `c` takes the place of nu, so the box bound is 1 / (c n).
struct OcSvmModel {
    KernelSpec kernel = KernelSpec::linear();
    double c = 0.1;
    Eigen::VectorXd alphas;
    std::vector<std::size_t> support_indices;
    Eigen::MatrixXd support_vectors;
    double rho = 0.0;

    double dual_objective = 0.0;
    long solver_iterations = 0;

    Eigen::Index input_dim() const noexcept { return support_vectors.cols(); }
    Eigen::VectorXd support_alphas() const;
};

OcSvmModel train_ocsvm(const Eigen::MatrixXd& target_rows, double c, const KernelSpec& kernel,
                       const SmoOptions& options = {});
OcSvmModel train_ocsvm(const FeatureMatrix& target_train, double c, const KernelSpec& kernel,
                       const SmoOptions& options = {});

double ocsvm_score(const OcSvmModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
Eigen::VectorXd ocsvm_score_batch(const OcSvmModel& model, const Eigen::MatrixXd& rows);

Decision ocsvm_classify(const OcSvmModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
std::vector<Decision> ocsvm_classify_batch(const OcSvmModel& model, const Eigen::MatrixXd& rows);

//! The OC-SVM dual as a SimplexBoxQp: H = K, p = 0, upper = 1 / (c n).
SimplexBoxQp ocsvm_dual(const Eigen::MatrixXd& gram, double c);

} // namespace occ
