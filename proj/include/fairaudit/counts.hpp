#pragma once

// GroupedCounts: the contingency counts n_ij = #{Y=i, S=j}, extended with the
// prediction-joint counts m[g][y][s] when predictions are supplied. Every
// fairness metric and every confidence interval in this library is computed
// from these exact integer counts.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace fairaudit {

struct GroupedCounts {
    std::size_t n[2][2] = {{0, 0}, {0, 0}}; // n[y][s]
    bool has_predictions = false;
    std::size_t m[2][2][2] = {};            // m[g][y][s]
    std::size_t n_total = 0;

    std::size_t group_total(int s) const {
        return n[0][static_cast<std::size_t>(s)] + n[1][static_cast<std::size_t>(s)];
    }
    // #{g(X)=1, S=s}
    std::size_t positive_predictions(int s) const {
        return m[1][0][static_cast<std::size_t>(s)] + m[1][1][static_cast<std::size_t>(s)];
    }
};

inline GroupedCounts count_groups(const std::vector<std::uint8_t>& y,
                                  const std::vector<std::uint8_t>& s,
                                  const std::vector<std::uint8_t>* yhat = nullptr) {
    if (y.size() != s.size())
        throw ArgumentError("count_groups: y and s lengths differ");
    if (yhat && yhat->size() != y.size())
        throw ArgumentError("count_groups: yhat length differs from y");
    GroupedCounts c;
    c.n_total = y.size();
    c.has_predictions = yhat != nullptr;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] > 1 || s[i] > 1)
            throw ArgumentError("count_groups: y and s values must be 0 or 1");
        ++c.n[y[i]][s[i]];
        if (yhat) {
            if ((*yhat)[i] > 1)
                throw ArgumentError("count_groups: yhat values must be 0 or 1");
            ++c.m[(*yhat)[i]][y[i]][s[i]];
        }
    }
    return c;
}

} // namespace fairaudit
