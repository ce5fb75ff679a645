#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include <fairaudit/evaluate.hpp>
#include <fairaudit/logistic.hpp>
#include <fairaudit/rng.hpp>

#include "support/fixtures.hpp"

using namespace fairaudit;

TEST_CASE("linearly separable two-point set reaches training accuracy 1") {
    const auto ds = fixtures::make_dataset({{-1.0}, {1.0}}, {0, 1}, {0, 1});
    const auto model = train_logistic(ds);
    ThresholdedClassifier clf(model);
    const auto metrics = evaluate(clf, ds);
    CHECK(metrics.accuracy().value() == 1.0);
}

TEST_CASE("all-zero feature matrix yields the base-rate sigmoid of the intercept") {
    const auto ds = fixtures::make_dataset({{0.0}, {0.0}, {0.0}, {0.0}, {0.0}},
                                           {1, 0, 0, 0, 1}, {0, 1, 0, 1, 0});
    const auto model = train_logistic(ds);
    const double base_rate = 2.0 / 5.0;
    for (std::size_t i = 0; i < ds.n; ++i) {
        CHECK(std::abs(model->score(dataset_row(ds, i)) - base_rate) < 1e-6);
    }
    CHECK(std::abs(model->weights()[0]) < 1e-9);
}

TEST_CASE("single-class labels raise a degenerate-training error") {
    const auto ds = fixtures::make_dataset({{1.0}, {2.0}}, {1, 1}, {0, 1});
    CHECK_THROWS_AS(train_logistic(ds), DegenerateTrainingError);
}

TEST_CASE("training loss is non-increasing across epochs") {
    const auto ds = fixtures::synthetic_population(300, 5);
    const auto model = train_logistic(ds);
    const auto& hist = model->loss_history();
    REQUIRE(hist.size() >= 2);
    for (std::size_t i = 1; i < hist.size(); ++i) CHECK(hist[i] <= hist[i - 1] + 1e-15);
}

namespace {

// regularized logistic loss and its analytic gradient, standalone
double loss_value(const std::vector<double>& x, const std::vector<std::uint8_t>& y,
                  std::size_t n, std::size_t d, const std::vector<double>& theta, double l2) {
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double z = theta[d];
        for (std::size_t j = 0; j < d; ++j) z += theta[j] * x[i * d + j];
        loss += log1p_exp_neg(y[i] ? z : -z);
    }
    loss /= static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) loss += 0.5 * l2 * theta[j] * theta[j];
    return loss;
}

std::vector<double> analytic_gradient(const std::vector<double>& x,
                                      const std::vector<std::uint8_t>& y, std::size_t n,
                                      std::size_t d, const std::vector<double>& theta,
                                      double l2) {
    std::vector<double> g(d + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double z = theta[d];
        for (std::size_t j = 0; j < d; ++j) z += theta[j] * x[i * d + j];
        const double r = sigmoid(z) - static_cast<double>(y[i]);
        for (std::size_t j = 0; j < d; ++j) g[j] += r * x[i * d + j];
        g[d] += r;
    }
    for (auto& v : g) v /= static_cast<double>(n);
    for (std::size_t j = 0; j < d; ++j) g[j] += l2 * theta[j];
    return g;
}

} // namespace

TEST_CASE("analytic gradient matches central finite differences within 1e-5 relative") {
    Rng rng(1234);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 10 + rng.next_below(30);
        const std::size_t d = 1 + rng.next_below(4);
        std::vector<double> x(n * d);
        std::vector<std::uint8_t> y(n);
        for (auto& v : x) v = 2.0 * rng.next_double() - 1.0;
        bool has0 = false, has1 = false;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] = rng.next_double() < 0.5 ? 0 : 1;
            (y[i] ? has1 : has0) = true;
        }
        if (!has0 || !has1) continue;
        std::vector<double> theta(d + 1);
        for (auto& t : theta) t = 2.0 * rng.next_double() - 1.0;
        const double l2 = 0.01;

        const auto grad = analytic_gradient(x, y, n, d, theta, l2);
        for (std::size_t j = 0; j <= d; ++j) {
            const double h = 1e-6;
            auto hi = theta, lo = theta;
            hi[j] += h;
            lo[j] -= h;
            const double fd =
                (loss_value(x, y, n, d, hi, l2) - loss_value(x, y, n, d, lo, l2)) / (2 * h);
            const double scale = std::max({std::abs(grad[j]), std::abs(fd), 1e-8});
            CHECK(std::abs(grad[j] - fd) / scale < 1e-5);
        }
    }
}

TEST_CASE("newton solution satisfies first-order optimality") {
    const auto ds = fixtures::synthetic_population(400, 9);
    LRParams params;
    params.l2_penalty = 1e-3;
    const auto model = train_logistic(ds, params);

    // rebuild the standardized design the trainer used and check ||grad|| ~ 0
    const std::size_t n = ds.n, d = ds.d;
    std::vector<double> means(d, 0.0), scales(d, 1.0);
    for (std::size_t j = 0; j < d; ++j) {
        if (!ds.features[j].is_continuous) continue;
        double m = 0;
        for (std::size_t i = 0; i < n; ++i) m += ds.x[i * d + j];
        m /= static_cast<double>(n);
        double ss = 0;
        for (std::size_t i = 0; i < n; ++i) ss += (ds.x[i * d + j] - m) * (ds.x[i * d + j] - m);
        means[j] = m;
        const double sd = std::sqrt(ss / static_cast<double>(n));
        scales[j] = sd > 0 ? sd : 1.0;
    }
    std::vector<double> xs(n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < d; ++j)
            xs[i * d + j] = (ds.x[i * d + j] - means[j]) / scales[j];
    std::vector<double> theta = model->weights();
    theta.push_back(model->intercept());
    const auto grad = analytic_gradient(xs, ds.y, n, d, theta, params.l2_penalty);
    for (double g : grad) CHECK(std::abs(g) < 1e-5);
}

TEST_CASE("scores stay in [0,1] on arbitrary rows") {
    const auto ds = fixtures::synthetic_population(100, 21);
    const auto model = train_logistic(ds);
    Rng rng(77);
    for (int i = 0; i < 100; ++i) {
        std::vector<double> row = {20.0 * rng.next_double() - 10.0,
                                   20.0 * rng.next_double() - 10.0,
                                   static_cast<double>(rng.next_below(2))};
        const double sc = model->score(row);
        CHECK(sc >= 0.0);
        CHECK(sc <= 1.0);
    }
}
