#include <occ/error.hpp>
#include <occ/svdd.hpp>

#include <cmath>

namespace occ {

Eigen::VectorXd SvddModel::support_alphas() const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(support_indices.size()));
    for (std::size_t s = 0; s < support_indices.size(); ++s) {
        out(static_cast<Eigen::Index>(s)) = alphas(static_cast<Eigen::Index>(support_indices[s]));
    }
    return out;
}

SimplexBoxQp svdd_dual(const Eigen::MatrixXd& gram, double c) {
    return SimplexBoxQp{2.0 * gram, -gram.diagonal(), c};
}

double svdd_dual_value(const Eigen::MatrixXd& gram, const Eigen::VectorXd& alphas) {
    return alphas.dot(gram.diagonal()) - alphas.dot(gram * alphas);
}

SvddModel train_svdd(const Eigen::MatrixXd& target_rows, double c, const KernelSpec& kernel,
                     const SmoOptions& options) {
    const Eigen::Index n = target_rows.rows();
    if (n == 0) {
        throw Error(ErrorKind::EmptyTrainingSet, "SVDD needs at least one training sample");
    }
    if (!std::isfinite(c) || c * static_cast<double>(n) < 1.0 - 1e-12) {
        throw Error(ErrorKind::InfeasibleC, "SVDD requires C >= 1/n (C=" + std::to_string(c) +
                                                ", n=" + std::to_string(n) + ", 1/n=" +
                                                std::to_string(1.0 / static_cast<double>(n)) + ")");
    }

    const Eigen::MatrixXd gram = gram_matrix(kernel, target_rows);
    // C * n may sit a hair below 1 through rounding (e.g. 0.01 * 100).
    const double upper = std::max(c, 1.0 / static_cast<double>(n));
    SmoResult sol = solve_smo(svdd_dual(gram, upper), options);

    SvddModel model;
    model.kernel = kernel;
    model.c = c;
    model.alphas = std::move(sol.alphas);
    model.dual_objective = -sol.objective;
    model.solver_iterations = sol.iterations;

    const Eigen::VectorXd k_alpha = gram * model.alphas;
    model.center_self_term = model.alphas.dot(k_alpha);
    const Eigen::VectorXd dist2 =
        (gram.diagonal() - 2.0 * k_alpha).array() + model.center_self_term;

    double free_sum = 0.0;
    long free_count = 0;
    double support_max = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = model.alphas(i);
        if (a <= kSupportThreshold) {
            continue;
        }
        model.support_indices.push_back(static_cast<std::size_t>(i));
        support_max = std::max(support_max, dist2(i));
        if (a < upper) {
            free_sum += dist2(i);
            ++free_count;
        }
    }
    model.r_squared = std::max(free_count > 0 ? free_sum / static_cast<double>(free_count) : support_max, 0.0);

    model.support_vectors.resize(static_cast<Eigen::Index>(model.support_indices.size()), target_rows.cols());
    for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
        model.support_vectors.row(static_cast<Eigen::Index>(s)) =
            target_rows.row(static_cast<Eigen::Index>(model.support_indices[s]));
    }
    return model;
}

SvddModel train_svdd(const FeatureMatrix& target_train, double c, const KernelSpec& kernel,
                     const SmoOptions& options) {
    return train_svdd(target_train.data(), c, kernel, options);
}

Eigen::VectorXd svdd_distance2_batch(const SvddModel& model, const Eigen::MatrixXd& rows) {
    Eigen::VectorXd cross = kernel_expansion(model.kernel, model.support_vectors, model.support_alphas(), rows);
    Eigen::VectorXd dist2 = self_kernel(model.kernel, rows) - 2.0 * cross;
    dist2.array() += model.center_self_term;
    return dist2.cwiseMax(0.0);
}

double svdd_distance2(const SvddModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != model.input_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "SVDD expects " + std::to_string(model.input_dim()) +
                                                      "-d input, got " + std::to_string(x.size()));
    }
    const Eigen::VectorXd weights = model.support_alphas();
    double cross = 0.0;
    for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s) {
        cross += weights(s) * kernel_eval(model.kernel, model.support_vectors.row(s).transpose(), x);
    }
    return std::max(kernel_eval(model.kernel, x, x) - 2.0 * cross + model.center_self_term, 0.0);
}

Decision svdd_classify(const SvddModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    return decide(model.r_squared - svdd_distance2(model, x));
}

std::vector<Decision> svdd_classify_batch(const SvddModel& model, const Eigen::MatrixXd& rows) {
    const Eigen::VectorXd dist2 = svdd_distance2_batch(model, rows);
    std::vector<Decision> out;
    out.reserve(static_cast<std::size_t>(dist2.size()));
    for (Eigen::Index i = 0; i < dist2.size(); ++i) {
        out.push_back(decide(model.r_squared - dist2(i)));
    }
    return out;
}

} // namespace occ
