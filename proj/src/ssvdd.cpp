#include <occ/error.hpp>
#include <occ/pca.hpp>
#include <occ/ssvdd.hpp>

#include <cmath>

namespace occ {

std::string to_string(SsvddVariant variant) {
    switch (variant) {
    case SsvddVariant::Plain: return "plain";
    case SsvddVariant::R1: return "r1";
    case SsvddVariant::R2: return "r2";
    }
    return "plain";
}

SsvddVariant parse_ssvdd_variant(const std::string& text) {
    if (text == "plain") return SsvddVariant::Plain;
    if (text == "r1") return SsvddVariant::R1;
    if (text == "r2") return SsvddVariant::R2;
    throw Error(ErrorKind::Format, "unknown S-SVDD variant '" + text + "'");
}

RbfEmbedding fit_rbf_embedding(const Eigen::MatrixXd& train_rows, double sigma) {
    if (train_rows.rows() < 2) {
        throw Error(ErrorKind::InsufficientSamples, "RBF embedding needs at least 2 samples");
    }
    RbfEmbedding emb;
    emb.kernel = KernelSpec::rbf(sigma);
    emb.train_rows = train_rows;
    const Eigen::MatrixXd gram = gram_matrix(emb.kernel, train_rows);
    emb.gram_col_means = gram.colwise().mean().transpose();
    emb.gram_mean = emb.gram_col_means.mean();

    Eigen::MatrixXd centered = gram;
    centered.rowwise() -= emb.gram_col_means.transpose();
    centered.colwise() -= emb.gram_col_means;
    centered.array() += emb.gram_mean;
    centered = 0.5 * (centered + centered.transpose()).eval();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(centered);
    const Eigen::VectorXd& values = eig.eigenvalues();
    const Eigen::Index n = values.size();
    const double tol = std::max(values(n - 1), 0.0) * 1e-10;
    Eigen::Index rank = 0;
    while (rank < n && values(n - 1 - rank) > tol) {
        ++rank;
    }
    if (rank == 0) {
        throw Error(ErrorKind::InsufficientSamples, "RBF Gram matrix has no variance at sigma=" + std::to_string(sigma));
    }
    emb.coefficients.resize(n, rank);
    for (Eigen::Index r = 0; r < rank; ++r) {
        const Eigen::Index src = n - 1 - r;
        Eigen::VectorXd u = eig.eigenvectors().col(src);
        Eigen::Index arg = 0;
        u.cwiseAbs().maxCoeff(&arg);
        if (u(arg) < 0.0) {
            u = -u;
        }
        emb.coefficients.col(r) = u / std::sqrt(values(src));
    }
    return emb;
}

Eigen::MatrixXd embed(const RbfEmbedding& embedding, const Eigen::MatrixXd& rows) {
    if (rows.cols() != embedding.input_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "embedding expects " + std::to_string(embedding.input_dim()) +
                                                      "-d input, got " + std::to_string(rows.cols()));
    }
    Eigen::MatrixXd cross = gram_matrix(embedding.kernel, rows, embedding.train_rows);
    const Eigen::VectorXd row_means = cross.rowwise().mean();
    cross.rowwise() -= embedding.gram_col_means.transpose();
    cross.colwise() -= row_means;
    cross.array() += embedding.gram_mean;
    return cross * embedding.coefficients;
}

Eigen::VectorXd compute_lambda(SsvddVariant variant, const Eigen::VectorXd& alphas, double c) {
    switch (variant) {
    case SsvddVariant::Plain: return Eigen::VectorXd::Zero(alphas.size());
    case SsvddVariant::R1: return Eigen::VectorXd::Ones(alphas.size());
    case SsvddVariant::R2: {
        Eigen::VectorXd lambda = Eigen::VectorXd::Zero(alphas.size());
        for (Eigen::Index i = 0; i < alphas.size(); ++i) {
            if (alphas(i) > kSupportThreshold && alphas(i) < c) {
                lambda(i) = alphas(i);
            }
        }
        return lambda;
    }
    }
    return Eigen::VectorXd::Zero(alphas.size());
}

Eigen::MatrixXd lagrangian_gradient(const Eigen::MatrixXd& q, const Eigen::MatrixXd& rows,
                                    const Eigen::VectorXd& alphas) {
    if (q.cols() != rows.cols() || alphas.size() != rows.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "gradient operands disagree in shape");
    }
    const Eigen::MatrixXd projected = rows * q.transpose(); // n x d
    const Eigen::VectorXd projected_center = projected.transpose() * alphas;
    const Eigen::RowVectorXd center = alphas.transpose() * rows;
    return 2.0 * (projected.transpose() * alphas.asDiagonal() * rows - projected_center * center);
}

Eigen::MatrixXd regularizer_gradient(const Eigen::MatrixXd& q, const Eigen::MatrixXd& rows,
                                     const Eigen::VectorXd& lambda) {
    if (q.cols() != rows.cols() || lambda.size() != rows.rows()) {
        throw Error(ErrorKind::DimensionMismatch, "gradient operands disagree in shape");
    }
    const Eigen::VectorXd weighted = rows.transpose() * lambda; // X l
    return 2.0 * (q * weighted) * weighted.transpose();
}

Eigen::MatrixXd ssvdd_update(const Eigen::MatrixXd& q, const Eigen::MatrixXd& rows, const Eigen::VectorXd& alphas,
                             const Eigen::VectorXd& lambda, double eta, double beta) {
    return q - eta * (lagrangian_gradient(q, rows, alphas) + beta * regularizer_gradient(q, rows, lambda));
}

namespace {

void check_params(const SsvddParams& params, Eigen::Index n, Eigen::Index dim) {
    if (n == 0) {
        throw Error(ErrorKind::EmptyTrainingSet, "S-SVDD needs at least one training sample");
    }
    if (params.d < 1 || params.d > dim) {
        throw Error(ErrorKind::InvalidArgument, "subspace dimensionality d=" + std::to_string(params.d) +
                                                    " must lie in [1, " + std::to_string(dim) + "]");
    }
    if (!std::isfinite(params.eta) || params.eta < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "learning rate must be finite and non-negative");
    }
    if (!std::isfinite(params.beta) || params.beta < 0.0) {
        throw Error(ErrorKind::InvalidArgument, "regularizer weight must be finite and non-negative");
    }
    if (params.max_iters < 1) {
        throw Error(ErrorKind::InvalidArgument, "max_iters must be at least 1");
    }
    if (!std::isfinite(params.c) || params.c * static_cast<double>(n) < 1.0 - 1e-12) {
        throw Error(ErrorKind::InfeasibleC, "S-SVDD requires C >= 1/n (C=" + std::to_string(params.c) +
                                                ", n=" + std::to_string(n) + ")");
    }
}

SsvddModel run_alternation(const Eigen::MatrixXd& rows, Eigen::MatrixXd q, const SsvddParams& params) {
    SsvddModel model;
    model.variant = params.variant;
    model.c = params.c;
    model.eta = params.eta;
    model.beta = params.beta;

    for (long iter = 1; iter <= params.max_iters; ++iter) {
        const Eigen::MatrixXd projected = rows * q.transpose();
        const SvddModel inner = train_svdd(projected, params.c, KernelSpec::linear(), params.smo);
        model.objective_history.push_back(inner.dual_objective);

        const Eigen::VectorXd lambda = compute_lambda(params.variant, inner.alphas, params.c);
        Eigen::MatrixXd next = ssvdd_update(q, rows, inner.alphas, lambda, params.eta, params.beta);
        // Overflow of the norm counts too: the next SVDD would see infinite distances.
        if (!next.allFinite() || !std::isfinite(next.norm()) || !std::isfinite(inner.dual_objective)) {
            throw Error(ErrorKind::Diverged, "projection became non-finite at iteration " + std::to_string(iter));
        }
        const double change = (next - q).norm();
        const double scale = q.norm();
        q = std::move(next);
        model.iterations_run = iter;
        if (change <= 1e-6 * scale) {
            break;
        }
    }
    model.inner = train_svdd(Eigen::MatrixXd(rows * q.transpose()), params.c, KernelSpec::linear(), params.smo);
    model.q = std::move(q);
    return model;
}

} // namespace

SsvddModel train_ssvdd_from(const Eigen::MatrixXd& target_rows, const Eigen::MatrixXd& q0,
                            const SsvddParams& params) {
    if (params.rbf_sigma) {
        throw Error(ErrorKind::InvalidArgument, "an explicit starting projection needs the linear mode");
    }
    check_params(params, target_rows.rows(), target_rows.cols());
    if (q0.rows() != params.d || q0.cols() != target_rows.cols()) {
        throw Error(ErrorKind::DimensionMismatch, "starting projection must be d x D");
    }
    return run_alternation(target_rows, q0, params);
}

SsvddModel train_ssvdd(const Eigen::MatrixXd& target_rows, const SsvddParams& params) {
    if (params.rbf_sigma) {
        if (target_rows.rows() == 0) {
            throw Error(ErrorKind::EmptyTrainingSet, "S-SVDD needs at least one training sample");
        }
        RbfEmbedding embedding = fit_rbf_embedding(target_rows, *params.rbf_sigma);
        const Eigen::MatrixXd embedded = embed(embedding, target_rows);
        check_params(params, embedded.rows(), embedded.cols());
        SsvddModel model = run_alternation(embedded, leading_axes(embedded, params.d), params);
        model.embedding = std::move(embedding);
        return model;
    }
    check_params(params, target_rows.rows(), target_rows.cols());
    return run_alternation(target_rows, leading_axes(target_rows, params.d), params);
}

SsvddModel train_ssvdd(const FeatureMatrix& target_train, const SsvddParams& params) {
    return train_ssvdd(target_train.data(), params);
}

Eigen::MatrixXd ssvdd_project(const SsvddModel& model, const Eigen::MatrixXd& rows) {
    if (rows.cols() != model.input_dim()) {
        throw Error(ErrorKind::DimensionMismatch, "S-SVDD expects " + std::to_string(model.input_dim()) +
                                                      "-d input, got " + std::to_string(rows.cols()));
    }
    if (model.embedding) {
        return embed(*model.embedding, rows) * model.q.transpose();
    }
    return rows * model.q.transpose();
}

Decision ssvdd_classify(const SsvddModel& model, const Eigen::Ref<const Eigen::VectorXd>& x) {
    const Eigen::MatrixXd row = x.transpose();
    return ssvdd_classify_batch(model, row).front();
}

std::vector<Decision> ssvdd_classify_batch(const SsvddModel& model, const Eigen::MatrixXd& rows) {
    return svdd_classify_batch(model.inner, ssvdd_project(model, rows));
}

} // namespace occ
