#pragma once

#include <occ/dataset.hpp>
#include <occ/decision.hpp>
#include <occ/svdd.hpp>

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace occ {

//! Regularizer choice for the subspace update: lambda = 0, lambda = 1, or
//! lambda picked from the support vectors.
enum class SsvddVariant { Plain, R1, R2 };

std::string to_string(SsvddVariant variant);
SsvddVariant parse_ssvdd_variant(const std::string& text);

//! Explicit feature map for the non-linear mode: kernel-PCA coordinates of
//! the centered RBF Gram matrix, extended to new points with the Nystrom
//! formula. Training points map to U * sqrt(Lambda).
struct RbfEmbedding {
    KernelSpec kernel = KernelSpec::rbf(1.0);
    Eigen::MatrixXd train_rows;     // n x D
    Eigen::VectorXd gram_col_means; // n
    double gram_mean = 0.0;
    Eigen::MatrixXd coefficients;   // n x r, U * Lambda^{-1/2}

    Eigen::Index input_dim() const noexcept { return train_rows.cols(); }
    Eigen::Index output_dim() const noexcept { return coefficients.cols(); }
};

RbfEmbedding fit_rbf_embedding(const Eigen::MatrixXd& train_rows, double sigma);
Eigen::MatrixXd embed(const RbfEmbedding& embedding, const Eigen::MatrixXd& rows);

struct SsvddParams {
    double c = 0.1;
    Eigen::Index d = 2;
    double eta = 1e-3;
    double beta = 0.0;
    SsvddVariant variant = SsvddVariant::Plain;
    std::optional<double> rbf_sigma; // set for the non-linear mode
    long max_iters = 50;
    SmoOptions smo{};
};

struct SsvddModel {
    SsvddVariant variant = SsvddVariant::Plain;
    double c = 0.1;
    double eta = 0.0;
    double beta = 0.0;
    Eigen::MatrixXd q; // d x D (D of the embedded space in non-linear mode)
    SvddModel inner;   // linear SVDD on the projected rows
    std::optional<RbfEmbedding> embedding;
    long iterations_run = 0;

    // Subspace dual objective after each SVDD solve; diagnostics only.
    std::vector<double> objective_history;

    Eigen::Index d() const noexcept { return q.rows(); }
    Eigen::Index input_dim() const noexcept { return embedding ? embedding->input_dim() : q.cols(); }
};

//! Plain -> zeros, R1 -> ones, R2 -> alpha_i where 0 < alpha_i < C, else 0.
Eigen::VectorXd compute_lambda(SsvddVariant variant, const Eigen::VectorXd& alphas, double c);

//! Gradient of sum_i a_i |Q x_i|^2 - sum_ij a_i a_j (Q x_i)'(Q x_j) at fixed
//! alphas: 2 Q X (diag(a) - a a') X'. Samples are rows of `rows`.
Eigen::MatrixXd lagrangian_gradient(const Eigen::MatrixXd& q, const Eigen::MatrixXd& rows,
                                    const Eigen::VectorXd& alphas);

//! Gradient of Tr(Q X l l' X' Q'): 2 Q X l l' X'.
Eigen::MatrixXd regularizer_gradient(const Eigen::MatrixXd& q, const Eigen::MatrixXd& rows,
                                     const Eigen::VectorXd& lambda);

//! Q - eta * (dL + beta * dPsi).
Eigen::MatrixXd ssvdd_update(const Eigen::MatrixXd& q, const Eigen::MatrixXd& rows, const Eigen::VectorXd& alphas,
                             const Eigen::VectorXd& lambda, double eta, double beta);

//! Alternates a linear SVDD solve in the subspace with a gradient step on Q.
//! Q starts at the leading principal axes of the (embedded) training rows.
SsvddModel train_ssvdd(const Eigen::MatrixXd& target_rows, const SsvddParams& params);
SsvddModel train_ssvdd(const FeatureMatrix& target_train, const SsvddParams& params);

//! Same as train_ssvdd with an explicit starting Q (linear mode only).
SsvddModel train_ssvdd_from(const Eigen::MatrixXd& target_rows, const Eigen::MatrixXd& q0,
                            const SsvddParams& params);

//! Embedding (if any) followed by Q.
Eigen::MatrixXd ssvdd_project(const SsvddModel& model, const Eigen::MatrixXd& rows);

Decision ssvdd_classify(const SsvddModel& model, const Eigen::Ref<const Eigen::VectorXd>& x);
std::vector<Decision> ssvdd_classify_batch(const SsvddModel& model, const Eigen::MatrixXd& rows);

} // namespace occ
