#include <occ/dual_solver.hpp>
#include <occ/error.hpp>

#include <limits>

namespace occ {

namespace {

constexpr double kTau = 1e-12;

} // namespace

double qp_objective(const SimplexBoxQp& qp, const Eigen::VectorXd& alphas) {
    return 0.5 * alphas.dot(qp.hessian * alphas) + qp.linear.dot(alphas);
}

double kkt_violation(const Eigen::VectorXd& alphas, const Eigen::VectorXd& gradient, double upper) {
    double up_max = -std::numeric_limits<double>::infinity();
    double low_min = std::numeric_limits<double>::infinity();
    for (Eigen::Index t = 0; t < alphas.size(); ++t) {
        if (alphas(t) < upper) {
            up_max = std::max(up_max, -gradient(t));
        }
        if (alphas(t) > 0.0) {
            low_min = std::min(low_min, -gradient(t));
        }
    }
    if (!std::isfinite(up_max) || !std::isfinite(low_min)) {
        return 0.0;
    }
    return std::max(up_max - low_min, 0.0);
}

SmoResult solve_smo(const SimplexBoxQp& qp, const SmoOptions& options) {
    const Eigen::Index n = qp.linear.size();
    if (n == 0) {
        throw Error(ErrorKind::EmptyTrainingSet, "QP has no variables");
    }
    if (qp.hessian.rows() != n || qp.hessian.cols() != n) {
        throw Error(ErrorKind::DimensionMismatch, "QP Hessian shape does not match the linear term");
    }
    const double start = 1.0 / static_cast<double>(n);
    if (start > qp.upper * (1.0 + 1e-12)) {
        throw Error(ErrorKind::InfeasibleC, "box bound is below 1/n");
    }
    const double upper = std::max(qp.upper, start);

    SmoResult result;
    Eigen::VectorXd& a = result.alphas;
    a = Eigen::VectorXd::Constant(n, start);
    Eigen::VectorXd g = qp.hessian * a + qp.linear;
    const Eigen::VectorXd diag = qp.hessian.diagonal();

    // mean(diag H) - mean(H) is the spread of the points in the geometry H
    // induces. Problems smaller than unit spread get a proportionally tighter stop.
    const double spread = std::max(diag.mean() - qp.hessian.mean(), 0.0);
    const double stop = options.tolerance * std::min(1.0, spread);

    long iter = 0;
    for (; iter < options.max_iterations && spread > 0.0; ++iter) {
        // i: most attractive index to increase; j: partner to decrease.
        Eigen::Index i = -1;
        double up_max = -std::numeric_limits<double>::infinity();
        double low_min = std::numeric_limits<double>::infinity();
        for (Eigen::Index t = 0; t < n; ++t) {
            if (a(t) < upper && -g(t) > up_max) {
                up_max = -g(t);
                i = t;
            }
            if (a(t) > 0.0 && -g(t) < low_min) {
                low_min = -g(t);
            }
        }
        if (i < 0 || !std::isfinite(low_min) || up_max - low_min <= stop) {
            break;
        }

        Eigen::Index j = -1;
        double best = std::numeric_limits<double>::infinity();
        for (Eigen::Index t = 0; t < n; ++t) {
            if (!(a(t) > 0.0)) {
                continue;
            }
            const double b = up_max + g(t);
            if (b <= 0.0) {
                continue;
            }
            double curv = diag(i) + diag(t) - 2.0 * qp.hessian(i, t);
            if (curv <= 0.0) {
                curv = kTau;
            }
            const double gain = -(b * b) / curv;
            if (gain < best) {
                best = gain;
                j = t;
            }
        }
        if (j < 0) {
            break;
        }

        double curv = diag(i) + diag(j) - 2.0 * qp.hessian(i, j);
        if (curv <= 0.0) {
            curv = kTau;
        }
        double step = (g(j) - g(i)) / curv;
        const double room_i = upper - a(i);
        const double room_j = a(j);
        bool clip_i = false;
        bool clip_j = false;
        if (step >= room_i) {
            step = room_i;
            clip_i = true;
        }
        if (step >= room_j) {
            step = room_j;
            clip_j = true;
            clip_i = step >= room_i;
        }
        a(i) = clip_i ? upper : a(i) + step;
        a(j) = clip_j ? 0.0 : a(j) - step;
        g.noalias() += step * (qp.hessian.col(i) - qp.hessian.col(j));
    }

    // Refresh the gradient to shed accumulated drift before reporting.
    g = qp.hessian * a + qp.linear;
    result.gradient = g;
    result.iterations = iter;
    result.violation = kkt_violation(a, g, upper);
    result.converged = result.violation <= stop || spread == 0.0;
    result.objective = qp_objective(qp, a);
    return result;
}

} // namespace occ
