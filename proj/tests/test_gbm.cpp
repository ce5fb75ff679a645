#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include <fairaudit/gbm.hpp>
#include <fairaudit/rng.hpp>
#include <fairaudit/tree.hpp>

#include "support/fixtures.hpp"

using namespace fairaudit;

TEST_CASE("zero rounds gives the constant base-rate scorer") {
    const auto ds = fixtures::synthetic_population(100, 2);
    GBMParams params;
    params.n_rounds = 0;
    const auto model = train_gbm(ds, params);
    double base = 0;
    for (auto v : ds.y) base += v;
    base /= static_cast<double>(ds.n);
    for (std::size_t i = 0; i < 5; ++i)
        CHECK(model->score(dataset_row(ds, i)) == Catch::Approx(base).epsilon(1e-12));
}

TEST_CASE("zero shrinkage equals the constant base-rate scorer") {
    const auto ds = fixtures::synthetic_population(150, 4);
    GBMParams params;
    params.n_rounds = 10;
    params.shrinkage = 0.0;
    const auto model = train_gbm(ds, params);
    double base = 0;
    for (auto v : ds.y) base += v;
    base /= static_cast<double>(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i)
        CHECK(model->score(dataset_row(ds, i)) == Catch::Approx(base).epsilon(1e-12));
}

TEST_CASE("training log-loss is non-increasing in rounds") {
    for (double shrink : {0.1, 0.5, 1.0}) {
        const auto ds = fixtures::synthetic_population(300, 8);
        GBMParams params;
        params.n_rounds = 40;
        params.shrinkage = shrink;
        const auto model = train_gbm(ds, params);
        const auto& hist = model->loss_history();
        REQUIRE(hist.size() >= 2);
        for (std::size_t i = 1; i < hist.size(); ++i) CHECK(hist[i] <= hist[i - 1] + 1e-15);
    }
}

TEST_CASE("one round with shrinkage 1 ranks like a single tree") {
    // 20-row fixture with informative splits and distinct leaf fractions
    std::vector<std::vector<double>> rows;
    std::vector<std::uint8_t> y, s;
    Rng rng(66);
    for (int i = 0; i < 20; ++i) {
        const double a = static_cast<double>(rng.next_below(4));
        const double b = static_cast<double>(rng.next_below(3));
        rows.push_back({a, b});
        y.push_back(static_cast<std::uint8_t>(a >= 2 ? (rng.next_below(4) > 0)
                                                     : (rng.next_below(4) == 0)));
        s.push_back(static_cast<std::uint8_t>(rng.next_below(2)));
    }
    const auto ds = fixtures::make_dataset(rows, y, s);

    GBMParams gparams;
    gparams.n_rounds = 1;
    gparams.shrinkage = 1.0;
    gparams.tree_depth = 2;
    const auto gbm = train_gbm(ds, gparams);
    TreeParams tparams;
    tparams.max_depth = 2;
    const auto tree = train_tree(ds, tparams);

    // orderings agree: whenever the tree strictly orders two rows, the gbm does too
    for (std::size_t i = 0; i < ds.n; ++i) {
        for (std::size_t j = 0; j < ds.n; ++j) {
            const double ti = tree->score(dataset_row(ds, i));
            const double tj = tree->score(dataset_row(ds, j));
            const double gi = gbm->score(dataset_row(ds, i));
            const double gj = gbm->score(dataset_row(ds, j));
            if (ti < tj) CHECK(gi < gj);
            if (ti == tj) CHECK(gi == Catch::Approx(gj).margin(1e-12));
        }
    }
}

TEST_CASE("scores stay in [0,1] everywhere") {
    const auto ds = fixtures::synthetic_population(200, 13);
    const auto model = train_gbm(ds);
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        std::vector<double> row = {10 * rng.next_double() - 5, 10 * rng.next_double() - 5,
                                   static_cast<double>(rng.next_below(2))};
        const double sc = model->score(row);
        CHECK(sc >= 0.0);
        CHECK(sc <= 1.0);
    }
}

TEST_CASE("single-class labels raise a degenerate-training error") {
    const auto ds = fixtures::make_dataset({{1.0}, {2.0}}, {0, 0}, {0, 1});
    CHECK_THROWS_AS(train_gbm(ds), DegenerateTrainingError);
}

TEST_CASE("boosting reduces training loss below the stump baseline") {
    const auto ds = fixtures::synthetic_population(400, 19);
    GBMParams params;
    params.n_rounds = 50;
    const auto model = train_gbm(ds, params);
    const auto& hist = model->loss_history();
    CHECK(hist.back() < hist.front());
}
