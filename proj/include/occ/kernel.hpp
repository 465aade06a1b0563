#pragma once

#include <Eigen/Dense>

#include <string>

namespace occ {

enum class KernelKind { Linear, Rbf };

class KernelSpec {
public:
    static KernelSpec linear() noexcept { return KernelSpec(KernelKind::Linear, 0.0); }
    //! Throws InvalidArgument unless sigma is finite and positive.
    static KernelSpec rbf(double sigma);

    KernelKind kind() const noexcept { return kind_; }
    double sigma() const noexcept { return sigma_; }

    std::string name() const { return kind_ == KernelKind::Linear ? "linear" : "rbf"; }

    friend bool operator==(const KernelSpec&, const KernelSpec&) = default;

private:
    KernelSpec(KernelKind kind, double sigma) noexcept : kind_(kind), sigma_(sigma) {}

    KernelKind kind_;
    double sigma_;
};

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y);

//! Entry (i, j) is k(a_i, b_j); rows are samples. Squared distances use
//! |x|^2 + |y|^2 - 2<x, y>, clamped at zero.
Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

//! Gram matrix of a set with itself: exactly symmetric, with the diagonal
//! evaluated directly (all ones for RBF).
Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& a);

//! k(x, x) for every row.
Eigen::VectorXd self_kernel(const KernelSpec& spec, const Eigen::MatrixXd& rows);

} // namespace occ

namespace occ {

//! sum_i weights_i * k(centers_i, x) for every row x, evaluated in row
//! blocks so the temporary Gram block stays bounded.
Eigen::VectorXd kernel_expansion(const KernelSpec& spec, const Eigen::MatrixXd& centers,
                                 const Eigen::VectorXd& weights, const Eigen::MatrixXd& rows);

} // namespace occ
