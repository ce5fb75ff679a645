#include <catch2/catch_amalgamated.hpp>

#include <fairaudit/evaluate.hpp>
#include <fairaudit/scorer.hpp>

#include "support/fixtures.hpp"

using namespace fairaudit;

namespace {

// oracle classifier: copies the label carried in feature 0
class FeatureCopy : public BinaryClassifier {
public:
    int predict(std::span<const double> x, int) const override { return x[0] >= 0.5 ? 1 : 0; }
    std::string variant() const override { return "feature-copy"; }
    nlohmann::ordered_json to_json() const override { return {}; }
};

} // namespace

TEST_CASE("perfect classifier scores 1 everywhere") {
    const auto ds = fixtures::make_dataset({{1}, {0}, {1}, {0}}, {1, 0, 1, 0}, {0, 0, 1, 1});
    const auto m = evaluate(FeatureCopy{}, ds);
    CHECK(m.accuracy().value() == 1.0);
    CHECK(m.tpr().value() == 1.0);
    CHECK(m.tnr().value() == 1.0);
    CHECK(m.group_tpr(0).value() == 1.0);
    CHECK(m.group_tnr(1).value() == 1.0);
}

TEST_CASE("constant-0 classifier accuracy equals one minus the positive rate") {
    const auto ds = fixtures::synthetic_population(500, 23);
    ThresholdedClassifier clf(std::make_shared<ConstantScorer>(0.0));
    const auto m = evaluate(clf, ds);
    double pos = 0;
    for (auto v : ds.y) pos += v;
    CHECK(m.accuracy().value() == Catch::Approx(1.0 - pos / static_cast<double>(ds.n)));
    CHECK(m.tpr().value() == 0.0);
    CHECK(m.tnr().value() == 1.0);
}

TEST_CASE("empty conditioning cell reports an absent rate, not zero") {
    // group 0 has no positives: group_tpr(0) undefined
    const auto ds = fixtures::make_dataset({{0}, {0}, {1}, {0}}, {0, 0, 1, 0}, {0, 0, 1, 1});
    const auto m = evaluate(FeatureCopy{}, ds);
    CHECK(!m.group_tpr(0).has_value());
    CHECK(m.group_tnr(0).has_value());
}

TEST_CASE("empty dataset is an argument error") {
    EncodedDataset empty;
    CHECK_THROWS_AS(evaluate(FeatureCopy{}, empty), ArgumentError);
}

TEST_CASE("per-group rates use only that group's rows") {
    const auto ds = fixtures::make_dataset({{1}, {1}, {0}, {0}}, {1, 0, 1, 0}, {0, 1, 0, 1});
    const auto m = evaluate(FeatureCopy{}, ds);
    // group 0: rows 0 (y=1,pred=1), 2 (y=1,pred=0) -> tpr 0.5
    CHECK(m.group_tpr(0).value() == 0.5);
    // group 1: rows 1 (y=0,pred=1), 3 (y=0,pred=0) -> tnr 0.5, fpr 0.5
    CHECK(m.group_tnr(1).value() == 0.5);
    CHECK(m.group_fpr(1).value() == 0.5);
    CHECK(m.group_false_positives(1) == 1);
}
