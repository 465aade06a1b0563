#include <occ/error.hpp>
#include <occ/pca.hpp>

#include <algorithm>
#include <iostream>

namespace occ {

namespace {

struct Eigenpairs {
    Eigen::MatrixXd axes; // k x D, rows
    Eigen::VectorXd values;
};

// Appends canonical axes (Gram-Schmidt against the accepted rows) until
// `axes` has `k` rows. Rows [0, accepted) are kept as they are.
void complete_basis(Eigen::MatrixXd& axes, Eigen::Index accepted, Eigen::Index k) {
    const Eigen::Index dim = axes.cols();
    Eigen::Index next = accepted;
    for (Eigen::Index axis = 0; axis < dim && next < k; ++axis) {
        Eigen::VectorXd v = Eigen::VectorXd::Unit(dim, axis);
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index r = 0; r < next; ++r) {
                v -= axes.row(r).dot(v) * axes.row(r).transpose();
            }
        }
        double norm = v.norm();
        if (norm > 0.5) {
            axes.row(next++) = v.transpose() / norm;
        }
    }
}

// Two passes of modified Gram-Schmidt over the rows, in order.
void reorthonormalize(Eigen::MatrixXd& axes) {
    for (int pass = 0; pass < 2; ++pass) {
        for (Eigen::Index r = 0; r < axes.rows(); ++r) {
            for (Eigen::Index s = 0; s < r; ++s) {
                axes.row(r) -= axes.row(r).dot(axes.row(s)) * axes.row(s);
            }
            axes.row(r).normalize();
        }
    }
}

void fix_signs(Eigen::MatrixXd& axes) {
    for (Eigen::Index r = 0; r < axes.rows(); ++r) {
        Eigen::Index arg = 0;
        axes.row(r).cwiseAbs().maxCoeff(&arg);
        if (axes(r, arg) < 0.0) {
            axes.row(r) *= -1.0;
        }
    }
}

Eigenpairs leading_eigenpairs(const Eigen::MatrixXd& centered, Eigen::Index k) {
    const Eigen::Index n = centered.rows();
    const Eigen::Index dim = centered.cols();
    const double denom = static_cast<double>(std::max<Eigen::Index>(n - 1, 1));

    Eigen::MatrixXd axes = Eigen::MatrixXd::Zero(k, dim);
    Eigen::VectorXd values = Eigen::VectorXd::Zero(k);

    Eigen::VectorXd eigenvalues;
    Eigen::MatrixXd eigenvectors;
    const bool use_gram = dim > n;
    if (use_gram) {
        // n x n route; eigenvectors are mapped back through X^T below.
        Eigen::MatrixXd gram = centered * centered.transpose() / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
        eigenvalues = eig.eigenvalues();
        eigenvectors = eig.eigenvectors();
    } else {
        Eigen::MatrixXd cov = centered.transpose() * centered / denom;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
        eigenvalues = eig.eigenvalues();
        eigenvectors = eig.eigenvectors();
    }

    // Solver output is ascending.
    const Eigen::Index available = eigenvalues.size();
    const double top = available > 0 ? eigenvalues(available - 1) : 0.0;
    const double tol = std::max(top, 0.0) * 1e-12;
    Eigen::Index accepted = 0;
    for (Eigen::Index r = 0; r < k && r < available; ++r) {
        const Eigen::Index src = available - 1 - r;
        const double lambda = eigenvalues(src);
        if (!(lambda > tol)) {
            break;
        }
        if (use_gram) {
            axes.row(r) = (centered.transpose() * eigenvectors.col(src)).transpose() / std::sqrt(denom * lambda);
        } else {
            axes.row(r) = eigenvectors.col(src).transpose();
        }
        values(r) = lambda;
        ++accepted;
    }
    if (accepted > 0) {
        Eigen::MatrixXd head = axes.topRows(accepted);
        reorthonormalize(head);
        axes.topRows(accepted) = head;
    }
    complete_basis(axes, accepted, k);
    fix_signs(axes);
    return {std::move(axes), std::move(values)};
}

} // namespace

PcaModel fit_pca(const FeatureMatrix& target_train, Eigen::Index k_requested) {
    const auto n = static_cast<Eigen::Index>(target_train.size());
    if (n < 2) {
        throw Error(ErrorKind::InsufficientSamples, "PCA needs at least 2 samples, got " + std::to_string(n));
    }
    if (k_requested < 1) {
        throw Error(ErrorKind::InvalidArgument, "number of components must be at least 1");
    }
    const Eigen::Index k = std::min({k_requested, n - 1, target_train.dim()});
    if (k < k_requested) {
        std::clog << "notice: PCA components clamped from " << k_requested << " to " << k << " (n=" << n
                  << ", D=" << target_train.dim() << ")\n";
    }
    PcaModel model;
    model.mean = target_train.data().colwise().mean().transpose();
    Eigen::MatrixXd centered = target_train.data().rowwise() - model.mean.transpose();
    auto pairs = leading_eigenpairs(centered, k);
    model.components = std::move(pairs.axes);
    model.explained_variance = std::move(pairs.values);
    return model;
}

Eigen::MatrixXd project(const PcaModel& model, const Eigen::MatrixXd& rows) {
    if (rows.cols() != model.input_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "PCA expects " + std::to_string(model.input_dim()) +
                                                      "-d input, got " + std::to_string(rows.cols()));
    }
    return (rows.rowwise() - model.mean.transpose()) * model.components.transpose();
}

FeatureMatrix project(const PcaModel& model, const FeatureMatrix& features) {
    return features.with_data(project(model, features.data()));
}

double total_variance(const Eigen::MatrixXd& rows) {
    if (rows.rows() < 2) {
        return 0.0;
    }
    Eigen::MatrixXd centered = rows.rowwise() - rows.colwise().mean();
    return centered.squaredNorm() / static_cast<double>(rows.rows() - 1);
}

Eigen::MatrixXd leading_axes(const Eigen::MatrixXd& rows, Eigen::Index k) {
    if (k < 1 || k > rows.cols()) {
        throw Error(ErrorKind::InvalidArgument, "axis count must lie in [1, D]");
    }
    if (rows.rows() < 1) {
        throw Error(ErrorKind::EmptyTrainingSet, "no rows to take axes from");
    }
    Eigen::MatrixXd centered = rows.rowwise() - rows.colwise().mean();
    return leading_eigenpairs(centered, k).axes;
}

} // namespace occ
