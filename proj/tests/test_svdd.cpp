#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"

#include <occ/classifier.hpp>
#include <occ/error.hpp>
#include <occ/svdd.hpp>

#include <cmath>
#include <numeric>

using namespace occ;

namespace {

ErrorKind kind_of(const auto& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("expected an occ::Error");
    return ErrorKind::Io;
}

Eigen::VectorXd margins(const SvddModel& model, const Eigen::MatrixXd& rows) {
    return model.r_squared - svdd_distance2_batch(model, rows).array();
}

} // namespace

TEST_CASE("one-point model is a zero-radius sphere at the point") {
    Eigen::MatrixXd x(1, 3);
    x << 1.0, -2.0, 0.5;
    for (double c : {1.0, 5.0}) {
        for (const auto& kernel : {KernelSpec::linear(), KernelSpec::rbf(1.0)}) {
            const auto model = train_svdd(x, c, kernel);
            CHECK(model.alphas.size() == 1);
            CHECK(model.alphas(0) == 1.0);
            CHECK(model.r_squared == doctest::Approx(0.0));
            CHECK(svdd_distance2(model, Eigen::VectorXd(x.row(0).transpose())) == doctest::Approx(0.0));
            CHECK(svdd_classify(model, Eigen::VectorXd(x.row(0).transpose())).is_target);
        }
    }
    Eigen::VectorXd far(3);
    far << 11.0, -2.0, 0.5; // distance^2 = 100
    const auto model = train_svdd(x, 1.0, KernelSpec::linear());
    CHECK(svdd_distance2(model, far) == doctest::Approx(100.0));
    CHECK_FALSE(svdd_classify(model, far).is_target);
}

TEST_CASE("three points on the unit circle give the unit ball") {
    Eigen::MatrixXd pts(3, 2);
    pts << -1, 0, 1, 0, 0, 1;
    const auto model = train_svdd(pts, 1.0, KernelSpec::linear());
    const Eigen::Vector2d center = pts.transpose() * model.alphas;
    CHECK(center.norm() < 1e-5);
    CHECK(std::sqrt(model.r_squared) == doctest::Approx(1.0).epsilon(1e-5));
    // (0,1) lies on the sphere but the diameter pair alone supports it.
    CHECK(model.alphas(2) == doctest::Approx(0.0));
    CHECK(svdd_distance2(model, Eigen::VectorXd(Eigen::Vector2d(0, 0))) == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(svdd_distance2(model, Eigen::VectorXd(Eigen::Vector2d(2, 0))) == doctest::Approx(4.0).epsilon(1e-5));
    for (Eigen::Index i = 0; i < 3; ++i) {
        CHECK(std::abs(svdd_classify(model, Eigen::VectorXd(pts.row(i).transpose())).margin) < 1e-5);
    }
}

TEST_CASE("SVDD dual matches the QP oracle: n=20, C=0.2, RBF sigma=1") {
    std::mt19937_64 rng(20);
    const Eigen::MatrixXd pts = testing::random_matrix(20, 2, rng);
    const auto kernel = KernelSpec::rbf(1.0);
    const auto model = train_svdd(pts, 0.2, kernel);
    const auto oracle = testing::projected_gradient_oracle(svdd_dual(gram_matrix(kernel, pts), 0.2));
    const double oracle_value = -oracle.objective;
    CHECK(std::abs(model.dual_objective - oracle_value) <= 1e-5 * std::abs(oracle_value));
    CHECK((model.alphas - oracle.alphas).cwiseAbs().maxCoeff() <= 1e-4);
}

TEST_CASE("infeasible C and empty training set") {
    std::mt19937_64 rng(1);
    const Eigen::MatrixXd pts = testing::random_matrix(600, 2, rng);
    CHECK(kind_of([&] { train_svdd(pts, 0.0001, KernelSpec::linear()); }) == ErrorKind::InfeasibleC);
    CHECK(kind_of([&] { train_svdd(Eigen::MatrixXd(0, 2), 1.0, KernelSpec::linear()); }) == ErrorKind::EmptyTrainingSet);
    // C exactly 1/n is feasible (uniform alphas).
    const auto model = train_svdd(testing::random_matrix(100, 2, rng), 0.01, KernelSpec::linear());
    CHECK((model.alphas.array() - 0.01).abs().maxCoeff() < 1e-15);
}

TEST_CASE("dual feasibility, outlier count and support-vector count bounds") {
    std::mt19937_64 rng(77);
    const std::vector<double> grid{0.01, 0.05, 0.1, 0.2, 0.3};
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index n = 20 + 7 * trial;
        const double c = std::max(grid[trial % grid.size()], 1.0 / static_cast<double>(n));
        const Eigen::MatrixXd pts = testing::random_matrix(n, 3, rng);
        const auto kernel = trial % 2 ? KernelSpec::rbf(1.0) : KernelSpec::linear();
        const auto model = train_svdd(pts, c, kernel);
        CHECK(std::abs(model.alphas.sum() - 1.0) <= 1e-8);
        CHECK(model.alphas.minCoeff() >= 0.0);
        CHECK(model.alphas.maxCoeff() <= c + 1e-10);
        CHECK(model.r_squared >= 0.0);
        for (auto idx : model.support_indices) CHECK(model.alphas(static_cast<Eigen::Index>(idx)) > 1e-10);

        const Eigen::VectorXd m = margins(model, pts);
        const auto outside = (m.array() < -1e-6).count();
        CHECK(outside <= static_cast<long>(std::ceil(1.0 / c - 1e-9)));
        CHECK(model.support_indices.size() >= static_cast<std::size_t>(std::ceil(1.0 / c - 1e-9)));
    }
}

TEST_CASE("hard-margin ball covers every training point") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const Eigen::MatrixXd pts = testing::random_matrix(25, 2, rng, 3.0);
        for (const auto& kernel : {KernelSpec::linear(), KernelSpec::rbf(2.0)}) {
            const auto model = train_svdd(pts, 1.0 + trial, kernel);
            CHECK((svdd_distance2_batch(model, pts).array() <= model.r_squared + 1e-6).all());
        }
    }
}

TEST_CASE("unbounded support vectors sit on the boundary") {
    std::mt19937_64 rng(19);
    const Eigen::MatrixXd pts = testing::random_matrix(60, 2, rng);
    const auto model = train_svdd(pts, 0.1, KernelSpec::rbf(1.0));
    for (auto idx : model.support_indices) {
        const auto i = static_cast<Eigen::Index>(idx);
        if (model.alphas(i) < model.c) {
            CHECK(std::abs(svdd_classify(model, Eigen::VectorXd(pts.row(i).transpose())).margin) < 1e-5);
        }
    }
}

TEST_CASE("RBF distance is bounded by 1 + center term") {
    std::mt19937_64 rng(5);
    const auto model = train_svdd(testing::random_matrix(30, 2, rng), 0.1, KernelSpec::rbf(0.5));
    const Eigen::MatrixXd probes = testing::random_matrix(200, 2, rng, 5.0);
    CHECK((svdd_distance2_batch(model, probes).array() <= 1.0 + model.center_self_term + 1e-12).all());
}

TEST_CASE("batch and scalar scoring agree; order of support vectors is irrelevant") {
    std::mt19937_64 rng(23);
    const Eigen::MatrixXd pts = testing::random_matrix(40, 3, rng);
    auto model = train_svdd(pts, 0.1, KernelSpec::rbf(1.5));
    const Eigen::MatrixXd probes = testing::random_matrix(30, 3, rng, 2.0);
    const Eigen::VectorXd batch = svdd_distance2_batch(model, probes);
    for (Eigen::Index i = 0; i < probes.rows(); ++i) {
        CHECK(batch(i) == doctest::Approx(svdd_distance2(model, Eigen::VectorXd(probes.row(i).transpose()))).epsilon(1e-10));
    }

    std::vector<std::size_t> order(model.support_indices.size());
    std::iota(order.begin(), order.end(), 0);
    std::reverse(order.begin(), order.end());
    SvddModel shuffled = model;
    for (std::size_t s = 0; s < order.size(); ++s) {
        shuffled.support_indices[s] = model.support_indices[order[s]];
        shuffled.support_vectors.row(static_cast<Eigen::Index>(s)) = model.support_vectors.row(static_cast<Eigen::Index>(order[s]));
    }
    CHECK((svdd_distance2_batch(shuffled, probes) - batch).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("two-blob fixture: target recall at the trained threshold") {
    const auto train = testing::two_blobs(2, 300, 1, 6.0, 1);
    const auto test = testing::two_blobs(2, 400, 400, 6.0, 2);
    const auto split = split_by_target(train, "target");
    const auto model = train_svdd(split.target, 1.0, KernelSpec::linear());
    const auto decisions = svdd_classify_batch(model, test.data());
    long tp = 0, positives = 0, fp = 0;
    for (std::size_t i = 0; i < test.size(); ++i) {
        const bool target = test.labels()[i] == "target";
        positives += target;
        tp += target && decisions[i].is_target;
        fp += !target && decisions[i].is_target;
    }
    CHECK(static_cast<double>(tp) / static_cast<double>(positives) >= 0.95);
    CHECK(fp < 40);
}

TEST_CASE("dimension mismatch is reported") {
    std::mt19937_64 rng(5);
    const auto model = train_svdd(testing::random_matrix(10, 2, rng), 0.5, KernelSpec::linear());
    CHECK(kind_of([&] { svdd_distance2(model, Eigen::VectorXd::Zero(3)); }) == ErrorKind::DimensionMismatch);
    CHECK(kind_of([&] { svdd_classify_batch(model, Eigen::MatrixXd::Zero(4, 3)); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("JSON round-trip scores identically") {
    std::mt19937_64 rng(8);
    const Eigen::MatrixXd pts = testing::random_matrix(30, 4, rng);
    const auto model = train_svdd(pts, 0.2, KernelSpec::rbf(2.0));
    const nlohmann::json j = svdd_to_json(model);
    CHECK(j.at("type") == "svdd");
    const auto back = svdd_from_json(nlohmann::json::parse(j.dump()));
    const Eigen::MatrixXd probes = testing::random_matrix(20, 4, rng);
    CHECK(svdd_distance2_batch(back, probes) == svdd_distance2_batch(model, probes));
    CHECK(back.r_squared == model.r_squared);
    CHECK_THROWS_AS(ocsvm_from_json(j), Error);
}
