#include <occ/error.hpp>
#include <occ/ocsvm.hpp>
#include <occ/svdd.hpp>

#include <cmath>
#include <limits>

namespace occ {

Eigen::VectorXd OcSvmModel::support_alphas() const {
    Eigen::VectorXd out(static_cast<Eigen::Index>(support_indices.size()));
    for (std::size_t s = 0; s < support_indices.size(); ++s) {
        out(static_cast<Eigen::Index>(s)) = alphas(static_cast<Eigen::Index>(support_indices[s]));
    }
    return out;
}

SimplexBoxQp ocsvm_dual(const Eigen::MatrixXd& gram, double c) {
    const double n = static_cast<double>(gram.rows());
    return SimplexBoxQp{gram, Eigen::VectorXd::Zero(gram.rows()), 1.0 / (c * n)};
}

OcSvmModel train_ocsvm(const Eigen::MatrixXd& target_rows, double c, const KernelSpec& kernel,
                       const SmoOptions& options) {
    const Eigen::Index n = target_rows.rows();
    if (n == 0) {
        throw Error(ErrorKind::EmptyTrainingSet, "OC-SVM needs at least one training sample");
    }
    if (!(c > 0.0) || !(c <= 1.0)) {
        throw Error(ErrorKind::InfeasibleC, "OC-SVM requires 0 < C <= 1 (C=" + std::to_string(c) + ")");
    }

    const Eigen::MatrixXd gram = gram_matrix(kernel, target_rows);
    const SimplexBoxQp qp = ocsvm_dual(gram, c);
    SmoResult sol = solve_smo(qp, options);

    OcSvmModel model;
    model.kernel = kernel;
    model.c = c;
    model.alphas = std::move(sol.alphas);
    model.dual_objective = sol.objective;
    model.solver_iterations = sol.iterations;

    // gradient_i = sum_j alpha_j k(x_j, x_i)
    const Eigen::VectorXd& fx = sol.gradient;
    double free_sum = 0.0;
    long free_count = 0;
    double bounded_max = -std::numeric_limits<double>::infinity(); // alpha at upper: f <= rho
    double zero_min = std::numeric_limits<double>::infinity();     // alpha at zero: f >= rho
    for (Eigen::Index i = 0; i < n; ++i) {
        const double a = model.alphas(i);
        if (a > kSupportThreshold) {
            model.support_indices.push_back(static_cast<std::size_t>(i));
        }
        if (a > kSupportThreshold && a < qp.upper) {
            free_sum += fx(i);
            ++free_count;
        } else if (a >= qp.upper) {
            bounded_max = std::max(bounded_max, fx(i));
        } else {
            zero_min = std::min(zero_min, fx(i));
        }
    }
    if (free_count > 0) {
        model.rho = free_sum / static_cast<double>(free_count);
    } else if (std::isfinite(bounded_max) && std::isfinite(zero_min)) {
        model.rho = 0.5 * (bounded_max + zero_min);
    } else {
        model.rho = std::isfinite(bounded_max) ? bounded_max : zero_min;
    }

    model.support_vectors.resize(static_cast<Eigen::Index>(model.support_indices.size()), target_rows.cols());
    for (std::size_t s = 0; s < model.support_indices.size(); ++s) {
        model.support_vectors.row(static_cast<Eigen::Index>(s)) =
            target_rows.row(static_cast<Eigen::Index>(model.support_indices[s]));
    }
    return model;
}

OcSvmModel train_ocsvm(const FeatureMatrix& target_train, double c, const KernelSpec& kernel,
                       const SmoOptions& options) {
    return train_ocsvm(target_train.data(), c, kernel, options);
}

Eigen::VectorXd ocsvm_score_batch(const OcSvmModel& model, const Eigen::MatrixXd& rows) {
    Eigen::VectorXd score = kernel_expansion(model.kernel, model.support_vectors, model.support_alphas(), rows);
    score.array() -= model.rho;
    return score;
}

double ocsvm_score(const OcSvmModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    if (x.size() != model.input_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "OC-SVM expects " + std::to_string(model.input_dim()) +
                                                      "-d input, got " + std::to_string(x.size()));
    }
    const Eigen::VectorXd weights = model.support_alphas();
    double sum = 0.0;
    for (Eigen::Index s = 0; s < model.support_vectors.rows(); ++s) {
        sum += weights(s) * kernel_eval(model.kernel, model.support_vectors.row(s).transpose(), x);
    }
    return sum - model.rho;
}

Decision ocsvm_classify(const OcSvmModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    return decide(ocsvm_score(model, x));
}

std::vector<Decision> ocsvm_classify_batch(const OcSvmModel& model, const Eigen::MatrixXd& rows) {
    const Eigen::VectorXd score = ocsvm_score_batch(model, rows);
    std::vector<Decision> out;
    out.reserve(static_cast<std::size_t>(score.size()));
    for (Eigen::Index i = 0; i < score.size(); ++i) {
        out.push_back(decide(score(i)));
    }
    return out;
}

} // namespace occ
