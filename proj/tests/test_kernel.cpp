#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include <occ/error.hpp>
#include <occ/kernel.hpp>

#include <cmath>

using namespace occ;

TEST_CASE("kernel_eval closed forms") {
    const Eigen::Vector2d x(0.0, 0.0);
    const Eigen::Vector2d y(std::sqrt(2.0), 0.0);
    CHECK(kernel_eval(KernelSpec::rbf(1.0), x, y) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(kernel_eval(KernelSpec::rbf(1.0), x, y) == doctest::Approx(0.367879441).epsilon(1e-9));
    CHECK(kernel_eval(KernelSpec::linear(), Eigen::Vector2d(1, 2), Eigen::Vector2d(3, 4)) == 11.0);
    for (double sigma : {1e-3, 1.0, 1e3}) {
        const Eigen::Vector3d p(0.3, -7.0, 2e5);
        CHECK(kernel_eval(KernelSpec::rbf(sigma), p, p) == 1.0);
    }
}

TEST_CASE("kernel spec validation and dimension checks") {
    CHECK_THROWS_AS(KernelSpec::rbf(0.0), Error);
    CHECK_THROWS_AS(KernelSpec::rbf(-1.0), Error);
    CHECK_THROWS_AS(KernelSpec::rbf(std::nan("")), Error);
    CHECK_THROWS_AS(kernel_eval(KernelSpec::linear(), Eigen::Vector2d::Zero(), Eigen::Vector3d::Zero()), Error);
    CHECK_THROWS_AS(gram_matrix(KernelSpec::linear(), Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 3)), Error);
}

TEST_CASE("self Gram matrix: unit diagonal, symmetric, PSD") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::MatrixXd pts = testing::random_matrix(5, 3, rng);
        for (const auto& spec : {KernelSpec::linear(), KernelSpec::rbf(0.5), KernelSpec::rbf(1.0), KernelSpec::rbf(10.0)}) {
            const Eigen::MatrixXd gram = gram_matrix(spec, pts);
            CHECK((gram - gram.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
            if (spec.kind() == KernelKind::Rbf) {
                CHECK(gram.diagonal() == Eigen::VectorXd::Ones(5));
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram, Eigen::EigenvaluesOnly);
            CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
        }
    }
}

TEST_CASE("batched Gram matches scalar evaluation") {
    std::mt19937_64 rng(2);
    const Eigen::MatrixXd a = testing::random_matrix(7, 4, rng);
    const Eigen::MatrixXd b = testing::random_matrix(9, 4, rng);
    for (const auto& spec : {KernelSpec::linear(), KernelSpec::rbf(0.7), KernelSpec::rbf(3.0)}) {
        const Eigen::MatrixXd gram = gram_matrix(spec, a, b);
        double worst = 0.0;
        for (Eigen::Index i = 0; i < a.rows(); ++i) {
            for (Eigen::Index j = 0; j < b.rows(); ++j) {
                worst = std::max(worst, std::abs(gram(i, j) - kernel_eval(spec, a.row(i).transpose(), b.row(j).transpose())));
            }
        }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("RBF decreases with distance and stays in (0, 1]") {
    const auto spec = KernelSpec::rbf(1.5);
    const Eigen::Vector3d origin = Eigen::Vector3d::Zero();
    const Eigen::Vector3d dir = Eigen::Vector3d(1, -2, 0.5).normalized();
    double prev = 1.0;
    for (int step = 1; step <= 50; ++step) {
        const double k = kernel_eval(spec, origin, (0.2 * step) * dir);
        CHECK(k < prev);
        CHECK(k > 0.0);
        prev = k;
    }
}

TEST_CASE("kernel_expansion sums weighted kernel rows across blocks") {
    std::mt19937_64 rng(9);
    const Eigen::MatrixXd centers = testing::random_matrix(6, 3, rng);
    const Eigen::VectorXd weights = testing::random_matrix(6, 1, rng);
    const Eigen::MatrixXd rows = testing::random_matrix(5000, 3, rng);
    const auto spec = KernelSpec::rbf(2.0);
    const Eigen::VectorXd got = kernel_expansion(spec, centers, weights, rows);
    for (Eigen::Index i : {0, 2047, 2048, 4999}) {
        double expected = 0.0;
        for (Eigen::Index s = 0; s < 6; ++s) {
            expected += weights(s) * kernel_eval(spec, centers.row(s).transpose(), rows.row(i).transpose());
        }
        CHECK(got(i) == doctest::Approx(expected).epsilon(1e-12));
    }
}
