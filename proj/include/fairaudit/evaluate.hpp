#pragma once

// Confusion-cell bookkeeping and the derived rates: accuracy, TPR, TNR, FPR,
// overall and conditioned on the sensitive group. A rate whose conditioning
// cell is empty is reported as absent (std::nullopt), never as 0.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "dataset.hpp"
#include "errors.hpp"
#include "scorer.hpp"

namespace fairaudit {

struct EvalMetrics {
    std::size_t n = 0;
    // cell[s][y][g]: rows with S=s, Y=y, prediction g
    std::array<std::array<std::array<std::size_t, 2>, 2>, 2> cell{};

    std::size_t count(int s, int y, int g) const {
        return cell[static_cast<std::size_t>(s)][static_cast<std::size_t>(y)]
                   [static_cast<std::size_t>(g)];
    }
    std::size_t group_size(int s) const {
        return count(s, 0, 0) + count(s, 0, 1) + count(s, 1, 0) + count(s, 1, 1);
    }

    std::optional<double> accuracy() const {
        return rate(count(0, 0, 0) + count(1, 0, 0) + count(0, 1, 1) + count(1, 1, 1), n);
    }
    std::optional<double> tpr() const {
        return rate(count(0, 1, 1) + count(1, 1, 1),
                    count(0, 1, 0) + count(0, 1, 1) + count(1, 1, 0) + count(1, 1, 1));
    }
    std::optional<double> tnr() const {
        return rate(count(0, 0, 0) + count(1, 0, 0),
                    count(0, 0, 0) + count(0, 0, 1) + count(1, 0, 0) + count(1, 0, 1));
    }
    std::optional<double> group_accuracy(int s) const {
        return rate(count(s, 0, 0) + count(s, 1, 1), group_size(s));
    }
    std::optional<double> group_tpr(int s) const {
        return rate(count(s, 1, 1), count(s, 1, 0) + count(s, 1, 1));
    }
    std::optional<double> group_tnr(int s) const {
        return rate(count(s, 0, 0), count(s, 0, 0) + count(s, 0, 1));
    }
    std::optional<double> group_fpr(int s) const {
        return rate(count(s, 0, 1), count(s, 0, 0) + count(s, 0, 1));
    }
    std::size_t group_false_positives(int s) const { return count(s, 0, 1); }

private:
    static std::optional<double> rate(std::size_t num, std::size_t den) {
        if (den == 0) return std::nullopt;
        return static_cast<double>(num) / static_cast<double>(den);
    }
};

inline EvalMetrics evaluate_predictions(const std::vector<std::uint8_t>& y,
                                        const std::vector<std::uint8_t>& s,
                                        const std::vector<std::uint8_t>& yhat) {
    if (y.size() != s.size() || y.size() != yhat.size())
        throw ArgumentError("evaluate_predictions: vector lengths differ");
    if (y.empty()) throw ArgumentError("evaluate_predictions: empty input");
    EvalMetrics m;
    m.n = y.size();
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] > 1 || s[i] > 1 || yhat[i] > 1)
            throw ArgumentError("evaluate_predictions: values must be 0 or 1");
        ++m.cell[s[i]][y[i]][yhat[i]];
    }
    return m;
}

inline EvalMetrics evaluate(const BinaryClassifier& clf, const EncodedDataset& ds) {
    if (ds.n == 0) throw ArgumentError("evaluate: empty dataset");
    return evaluate_predictions(ds.y, ds.s, predict_all(clf, ds));
}

} // namespace fairaudit
