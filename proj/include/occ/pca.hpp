#pragma once

#include <occ/dataset.hpp>

#include <Eigen/Dense>

#include <string>

namespace occ {

//! Target-class PCA mapping. Rows of `components` are orthonormal and
//! ordered by non-increasing explained variance.
struct PcaModel {
    Eigen::VectorXd mean;
    Eigen::MatrixXd components; // k x D
    Eigen::VectorXd explained_variance;

    Eigen::Index k() const noexcept { return components.rows(); }
    Eigen::Index input_dim() const noexcept { return mean.size(); }
};

//! Fits on the given rows only. k is clamped to min(k_requested, n - 1, D);
//! a notice goes to std::clog when clamping happens.
PcaModel fit_pca(const FeatureMatrix& target_train, Eigen::Index k_requested);

//! Row i of the result is components * (x_i - mean).
Eigen::MatrixXd project(const PcaModel& model, const Eigen::MatrixXd& rows);
FeatureMatrix project(const PcaModel& model, const FeatureMatrix& features);

//! Sum of per-coordinate sample variances (denominator n - 1).
double total_variance(const Eigen::MatrixXd& rows);

//! The k leading eigenvectors of the sample covariance of `rows`, as rows of
//! a k x D matrix, with the same sign convention as fit_pca. Unlike fit_pca,
//! k may reach D regardless of n; directions without variance come out as
//! an orthonormal completion.
Eigen::MatrixXd leading_axes(const Eigen::MatrixXd& rows, Eigen::Index k);

} // namespace occ
