#pragma once

#include <Eigen/Dense>

namespace occ {

//! Box-and-simplex constrained convex QP shared by SVDD and OC-SVM:
//!
//!     minimize   1/2 a' H a + p' a
//!     subject to sum(a) = 1,  0 <= a_i <= upper
//!
//! H must be symmetric PSD.
struct SimplexBoxQp {
    Eigen::MatrixXd hessian;
    Eigen::VectorXd linear;
    double upper = 1.0;
};

struct SmoOptions {
    // Stop when the maximal KKT violation is at most tolerance * min(1, spread),
    // spread = mean(diag H) - mean(H).
    double tolerance = 1e-6;
    long max_iterations = 100000;
};

struct SmoResult {
    Eigen::VectorXd alphas;
    Eigen::VectorXd gradient; // H a + p at the solution
    double objective = 0.0;
    double violation = 0.0;
    long iterations = 0;
    bool converged = false;
};

//! SMO with maximal-violating-pair selection (second-order choice of the
//! partner) and the analytic two-variable update. Starts from the uniform
//! point 1/n, which must satisfy the box.
SmoResult solve_smo(const SimplexBoxQp& qp, const SmoOptions& options = {});

double qp_objective(const SimplexBoxQp& qp, const Eigen::VectorXd& alphas);

//! max_{a_i < upper} -g_i - min_{a_j > 0} -g_j, or 0 when one side is empty.
double kkt_violation(const Eigen::VectorXd& alphas, const Eigen::VectorXd& gradient, double upper);

} // namespace occ
