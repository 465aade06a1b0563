#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include <occ/classifier.hpp>
#include <occ/error.hpp>
#include <occ/ocsvm.hpp>
#include <occ/svdd.hpp>

#include <cmath>

using namespace occ;

TEST_CASE("one point is accepted and w points along it") {
    Eigen::MatrixXd x(1, 2);
    x << 3.0, 4.0;
    for (double c : {0.1, 0.5, 1.0}) {
        const auto model = train_ocsvm(x, c, KernelSpec::linear());
        CHECK(model.alphas(0) == 1.0);
        const Eigen::Vector2d w = model.support_vectors.transpose() * model.support_alphas();
        CHECK(w.normalized().isApprox(Eigen::Vector2d(0.6, 0.8)));
        CHECK(ocsvm_classify(model, Eigen::VectorXd(x.row(0).transpose())).is_target);
    }
}

TEST_CASE("OC-SVM dual matches the QP oracle: n=20, c=0.2, RBF sigma=1") {
    std::mt19937_64 rng(20);
    const Eigen::MatrixXd pts = testing::random_matrix(20, 2, rng);
    const auto kernel = KernelSpec::rbf(1.0);
    const auto model = train_ocsvm(pts, 0.2, kernel);
    const auto oracle = testing::projected_gradient_oracle(ocsvm_dual(gram_matrix(kernel, pts), 0.2));
    CHECK(std::abs(model.dual_objective - oracle.objective) <= 1e-5 * std::abs(oracle.objective));
}

TEST_CASE("with an RBF kernel OC-SVM and SVDD coincide when their boxes match") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 5; ++trial) {
        const Eigen::Index n = 30;
        const double c = 0.1 + 0.05 * trial;
        const Eigen::MatrixXd pts = testing::random_matrix(n, 2, rng);
        const auto kernel = KernelSpec::rbf(1.0);
        SmoOptions tight;
        tight.tolerance = 1e-10;
        const auto oc = train_ocsvm(pts, c, kernel, tight);
        const auto sv = train_svdd(pts, 1.0 / (c * static_cast<double>(n)), kernel, tight);
        CHECK((oc.alphas - sv.alphas).cwiseAbs().maxCoeff() <= 1e-6);

        // Decision regions agree on a probe grid.
        long agree = 0, total = 0;
        for (double px = -3.0; px <= 3.0; px += 0.1) {
            for (double py = -3.0; py <= 3.0; py += 0.1) {
                Eigen::Vector2d p(px, py);
                agree += ocsvm_classify(oc, Eigen::VectorXd(p)).is_target == svdd_classify(sv, Eigen::VectorXd(p)).is_target;
                ++total;
            }
        }
        CHECK(static_cast<double>(agree) / static_cast<double>(total) >= 0.999);
    }
}

TEST_CASE("C outside (0, 1] and empty input are rejected") {
    std::mt19937_64 rng(1);
    const Eigen::MatrixXd pts = testing::random_matrix(10, 2, rng);
    for (double c : {0.0, -0.1, 1.5}) {
        try {
            train_ocsvm(pts, c, KernelSpec::linear());
            FAIL("expected InfeasibleC");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::InfeasibleC);
        }
    }
    CHECK_THROWS_AS(train_ocsvm(Eigen::MatrixXd(0, 2), 0.5, KernelSpec::linear()), Error);
}

TEST_CASE("nu-property and dual feasibility on random fixtures") {
    std::mt19937_64 rng(55);
    const std::vector<double> grid{0.01, 0.05, 0.1, 0.2, 0.3};
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 30 + 10 * trial;
        const double c = grid[trial % grid.size()];
        const Eigen::MatrixXd pts = testing::random_matrix(n, 3, rng) + Eigen::MatrixXd::Constant(n, 3, 2.0);
        const auto kernel = trial % 2 ? KernelSpec::rbf(1.0) : KernelSpec::linear();
        const auto model = train_ocsvm(pts, c, kernel);
        const double nd = static_cast<double>(n);
        CHECK(std::abs(model.alphas.sum() - 1.0) <= 1e-8);
        CHECK(model.alphas.minCoeff() >= 0.0);
        CHECK(model.alphas.maxCoeff() <= 1.0 / (c * nd) + 1e-10);

        const Eigen::VectorXd score = ocsvm_score_batch(model, pts);
        const double errors = static_cast<double>((score.array() < -1e-6).count());
        CHECK(errors / nd <= c + 2.0 / nd);
        CHECK(static_cast<double>(model.support_indices.size()) / nd >= c - 1.0 / nd);
    }
}

TEST_CASE("unbounded support vectors score zero") {
    std::mt19937_64 rng(4);
    const Eigen::MatrixXd pts = testing::random_matrix(50, 2, rng);
    const auto model = train_ocsvm(pts, 0.2, KernelSpec::rbf(1.0));
    const double upper = 1.0 / (0.2 * 50.0);
    long free = 0;
    for (auto idx : model.support_indices) {
        const auto i = static_cast<Eigen::Index>(idx);
        if (model.alphas(i) < upper) {
            ++free;
            CHECK(std::abs(ocsvm_score(model, Eigen::VectorXd(pts.row(i).transpose()))) < 1e-5);
        }
    }
    CHECK(free > 0);
}

TEST_CASE("two-blob fixture: recall and training margin errors") {
    const auto train = split_by_target(testing::two_blobs(2, 300, 1, 6.0, 3), "target").target;
    const auto test = testing::two_blobs(2, 400, 400, 6.0, 4);
    const double c = 0.02;
    const auto model = train_ocsvm(train, c, KernelSpec::rbf(2.0));
    const auto decisions = ocsvm_classify_batch(model, test.data());
    long tp = 0, positives = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        const bool target = test.labels()[i] == "target";
        positives += target;
        tp += target && decisions[i].is_target;
    }
    CHECK(static_cast<double>(tp) / static_cast<double>(positives) >= 0.95);
    const double n = static_cast<double>(train.size());
    const auto train_scores = ocsvm_score_batch(model, train.data());
    CHECK(static_cast<double>((train_scores.array() < 0.0).count()) / n <= c + 2.0 / n);
}

TEST_CASE("JSON round-trip scores identically") {
    std::mt19937_64 rng(8);
    const Eigen::MatrixXd pts = testing::random_matrix(30, 4, rng);
    const auto model = train_ocsvm(pts, 0.2, KernelSpec::rbf(2.0));
    const auto back = ocsvm_from_json(nlohmann::json::parse(ocsvm_to_json(model).dump()));
    const Eigen::MatrixXd probes = testing::random_matrix(20, 4, rng);
    CHECK(ocsvm_score_batch(back, probes) == ocsvm_score_batch(model, probes));
    CHECK(back.rho == model.rho);
}
