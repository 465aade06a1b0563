#pragma once

#include <occ/dataset.hpp>
#include <occ/decision.hpp>
#include <occ/dual_solver.hpp>
#include <occ/kernel.hpp>

#include <Eigen/Dense>

#include <vector>

namespace occ {

//! Dual coefficients with alpha_i at or below this are not support vectors.
inline constexpr double kSupportThreshold = 1e-10;

//! Hypersphere description: center a = sum_i alpha_i phi(x_i), radius R.
struct SvddModel {
    KernelSpec kernel = KernelSpec::linear();
    double c = 1.0;
    Eigen::VectorXd alphas;                  // one per training sample
    std::vector<std::size_t> support_indices; // alpha_i > kSupportThreshold
    Eigen::MatrixXd support_vectors;          // rows, aligned with support_indices
    double r_squared = 0.0;
    double center_self_term = 0.0;            // sum_ij alpha_i alpha_j k(x_i, x_j)

    // Diagnostics, not serialized.
    double dual_objective = 0.0;
    long solver_iterations = 0;

    Eigen::Index input_dim() const noexcept { return support_vectors.cols(); }
    Eigen::VectorXd support_alphas() const;
};

SvddModel train_svdd(const Eigen::MatrixXd& target_rows, double c, const KernelSpec& kernel,
                     const SmoOptions& options = {});
SvddModel train_svdd(const FeatureMatrix& target_train, double c, const KernelSpec& kernel,
                     const SmoOptions& options = {});

//! Squared feature-space distance to the center, clamped at zero.
double svdd_distance2(const SvddModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
Eigen::VectorXd svdd_distance2_batch(const SvddModel& model, const Eigen::MatrixXd& rows);

//! Margin is R^2 - distance^2.
Decision svdd_classify(const SvddModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
std::vector<Decision> svdd_classify_batch(const SvddModel& model, const Eigen::MatrixXd& rows);

//! The SVDD dual as a SimplexBoxQp: H = 2K, p = -diag(K), upper = C.
SimplexBoxQp svdd_dual(const Eigen::MatrixXd& gram, double c);

//! sum_i alpha_i K_ii - alpha' K alpha.
double svdd_dual_value(const Eigen::MatrixXd& gram, const Eigen::VectorXd& alphas);

} // namespace occ
