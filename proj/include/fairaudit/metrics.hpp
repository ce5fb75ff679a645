#pragma once

// Fairness indices: Disparate Impact of data and of classifiers, and the
// group-conditional TP/TN rate ratios. Counts stay exact integers until the
// final divisions; an empty conditioning cell raises UndefinedMetricError
// naming the cell.

#include <string>

#include "counts.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "scorer.hpp"

namespace fairaudit {

enum class DISource { Data, Classifier };

struct DIValue {
    double value = 0.0;
    double numerator_rate = 0.0;   // P(decision=1 | S=0)
    double denominator_rate = 0.0; // P(decision=1 | S=1)
    DISource source = DISource::Data;
};

enum class RateKind { TP, TN };

// DI of the reference decisions: [n10/(n00+n10)] / [n11/(n01+n11)].
inline DIValue disparate_impact(const GroupedCounts& c) {
    if (c.group_total(0) == 0)
        throw UndefinedMetricError("disparate impact undefined: no observations with S=0");
    if (c.group_total(1) == 0)
        throw UndefinedMetricError("disparate impact undefined: no observations with S=1");
    if (c.n[1][1] == 0)
        throw UndefinedMetricError(
            "disparate impact undefined: cell (Y=1,S=1) is empty, denominator rate is zero");
    DIValue di;
    di.source = DISource::Data;
    di.numerator_rate =
        static_cast<double>(c.n[1][0]) / static_cast<double>(c.group_total(0));
    di.denominator_rate =
        static_cast<double>(c.n[1][1]) / static_cast<double>(c.group_total(1));
    di.value = di.numerator_rate / di.denominator_rate;
    return di;
}

// DI of predictions: P(g=1|S=0) / P(g=1|S=1), from the m counts.
inline DIValue disparate_impact_of_predictions(const GroupedCounts& c) {
    if (!c.has_predictions)
        throw ArgumentError("disparate_impact_of_predictions: counts carry no predictions");
    if (c.group_total(0) == 0)
        throw UndefinedMetricError("classifier DI undefined: no observations with S=0");
    if (c.group_total(1) == 0)
        throw UndefinedMetricError("classifier DI undefined: no observations with S=1");
    if (c.positive_predictions(1) == 0)
        throw UndefinedMetricError(
            "classifier DI undefined: cell (g=1,S=1) is empty, denominator rate is zero");
    DIValue di;
    di.source = DISource::Classifier;
    di.numerator_rate = static_cast<double>(c.positive_predictions(0)) /
                        static_cast<double>(c.group_total(0));
    di.denominator_rate = static_cast<double>(c.positive_predictions(1)) /
                          static_cast<double>(c.group_total(1));
    di.value = di.numerator_rate / di.denominator_rate;
    return di;
}

inline DIValue disparate_impact_of_classifier(const BinaryClassifier& clf,
                                              const EncodedDataset& ds) {
    const auto yhat = predict_all(clf, ds);
    return disparate_impact_of_predictions(count_groups(ds.y, ds.s, &yhat));
}

// Group-conditional rate ratio: TP: P(g=1|Y=1,S=0) / P(g=1|Y=1,S=1);
// TN: P(g=0|Y=0,S=0) / P(g=0|Y=0,S=1).
inline DIValue rate_ratio(const GroupedCounts& c, RateKind which) {
    if (!c.has_predictions)
        throw ArgumentError("rate_ratio: counts carry no predictions");
    const int y = which == RateKind::TP ? 1 : 0;
    const int g = which == RateKind::TP ? 1 : 0;
    const char* label = which == RateKind::TP ? "TP" : "TN";
    const auto cond = [&](int s) {
        return c.m[0][y][s] + c.m[1][y][s]; // #{Y=y, S=s}
    };
    const auto hits = [&](int s) { return c.m[g][y][s]; };
    for (int s = 0; s < 2; ++s) {
        if (cond(s) == 0)
            throw UndefinedMetricError(std::string(label) + " ratio undefined: cell (Y=" +
                                       std::to_string(y) + ",S=" + std::to_string(s) +
                                       ") is empty");
    }
    if (hits(1) == 0)
        throw UndefinedMetricError(std::string(label) +
                                   " ratio undefined: cell (g=" + std::to_string(g) +
                                   ",Y=" + std::to_string(y) +
                                   ",S=1) is empty, denominator rate is zero");
    DIValue r;
    r.source = DISource::Classifier;
    r.numerator_rate = static_cast<double>(hits(0)) / static_cast<double>(cond(0));
    r.denominator_rate = static_cast<double>(hits(1)) / static_cast<double>(cond(1));
    r.value = r.numerator_rate / r.denominator_rate;
    return r;
}

} // namespace fairaudit
