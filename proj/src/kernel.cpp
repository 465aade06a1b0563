#include <occ/error.hpp>
#include <occ/kernel.hpp>

#include <cmath>

namespace occ {

KernelSpec KernelSpec::rbf(double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw Error(ErrorKind::InvalidArgument, "RBF sigma must be positive and finite");
    }
    return KernelSpec(KernelKind::Rbf, sigma);
}

double kernel_eval(const KernelSpec& spec, const Eigen::Ref<const Eigen::VectorXd>& x,
                   const Eigen::Ref<const Eigen::VectorXd>& y) {
    if (x.size() != y.size()) {
        throw Error(ErrorKind::DimensionMismatch, "kernel arguments differ in dimensionality");
    }
    if (spec.kind() == KernelKind::Linear) {
        return x.dot(y);
    }
    const double sigma = spec.sigma();
    return std::exp(-(x - y).squaredNorm() / (2.0 * sigma * sigma));
}

Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
    if (a.cols() != b.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "Gram matrix operands differ in dimensionality");
    }
    Eigen::MatrixXd inner = a * b.transpose();
    if (spec.kind() == KernelKind::Linear) {
        return inner;
    }
    const Eigen::VectorXd a_sq = a.rowwise().squaredNorm();
    const Eigen::VectorXd b_sq = b.rowwise().squaredNorm();
    const double scale = -1.0 / (2.0 * spec.sigma() * spec.sigma());
    for (Eigen::Index j = 0; j < inner.cols(); ++j) {
        for (Eigen::Index i = 0; i < inner.rows(); ++i) {
            const double dist2 = std::max(a_sq(i) + b_sq(j) - 2.0 * inner(i, j), 0.0);
            inner(i, j) = std::exp(scale * dist2);
        }
    }
    return inner;
}

Eigen::MatrixXd gram_matrix(const KernelSpec& spec, const Eigen::MatrixXd& a) {
    Eigen::MatrixXd gram = gram_matrix(spec, a, a);
    Eigen::MatrixXd sym = 0.5 * (gram + gram.transpose());
    sym.diagonal() = self_kernel(spec, a);
    return sym;
}

Eigen::VectorXd self_kernel(const KernelSpec& spec, const Eigen::MatrixXd& rows) {
    if (spec.kind() == KernelKind::Linear) {
        return rows.rowwise().squaredNorm();
    }
    return Eigen::VectorXd::Ones(rows.rows());
}

} // namespace occ

namespace occ {

Eigen::VectorXd kernel_expansion(const KernelSpec& spec, const Eigen::MatrixXd& centers,
                                 const Eigen::VectorXd& weights, const Eigen::MatrixXd& rows) {
    if (centers.rows() != weights.size()) {
        throw Error(ErrorKind::DimensionMismatch, "expansion weights do not match the centers");
    }
    if (centers.cols() != rows.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "expected " + std::to_string(centers.cols()) +
                                                      "-d input, got " + std::to_string(rows.cols()));
    }
    constexpr Eigen::Index kBlock = 2048;
    Eigen::VectorXd out(rows.rows());
    for (Eigen::Index start = 0; start < rows.rows(); start += kBlock) {
        const Eigen::Index len = std::min(kBlock, rows.rows() - start);
        out.segment(start, len) = gram_matrix(spec, rows.middleRows(start, len), centers) * weights;
    }
    return out;
}

} // namespace occ
