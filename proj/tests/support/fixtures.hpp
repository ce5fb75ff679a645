#pragma once

// Shared test fixtures: hand-built encoded datasets, synthetic learnable
// populations, and a miniature Adult-shaped CSV for recipe tests.

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include <fairaudit/dataset.hpp>
#include <fairaudit/rng.hpp>
#include <fairaudit/stats.hpp>

namespace fixtures {

// Dataset from explicit vectors; feature kinds default to continuous.
inline fairaudit::EncodedDataset make_dataset(const std::vector<std::vector<double>>& rows,
                                              const std::vector<std::uint8_t>& y,
                                              const std::vector<std::uint8_t>& s,
                                              std::vector<std::size_t> s_indices = {}) {
    fairaudit::EncodedDataset ds;
    ds.n = rows.size();
    ds.d = rows.empty() ? 0 : rows[0].size();
    for (std::size_t j = 0; j < ds.d; ++j)
        ds.features.push_back({"f" + std::to_string(j), "f" + std::to_string(j), true, ""});
    ds.x.reserve(ds.n * ds.d);
    for (const auto& r : rows)
        ds.x.insert(ds.x.end(), r.begin(), r.end());
    ds.y = y;
    ds.s = s;
    ds.sensitive_feature_indices = std::move(s_indices);
    ds.label_column = "y";
    ds.positive_value = "1";
    ds.sensitive_column = "s";
    ds.protected_value = "0";
    return ds;
}

// Learnable synthetic population with group-dependent bias. Feature 0 is the
// signal, feature 1 is noise, feature 2 encodes S. P(Y=1) rises with the
// signal and is shifted down for S=0.
inline fairaudit::EncodedDataset synthetic_population(std::size_t n, std::uint64_t seed,
                                                      double group_bias = 1.0,
                                                      double minority_share = 0.35) {
    fairaudit::Rng rng(seed);
    std::vector<std::vector<double>> rows;
    std::vector<std::uint8_t> y, s;
    rows.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const int group = rng.next_double() < minority_share ? 0 : 1;
        const double signal = 2.0 * rng.next_double() - 1.0;
        const double noise = 2.0 * rng.next_double() - 1.0;
        const double logit = 2.5 * signal - 0.4 + (group == 0 ? -group_bias : 0.0);
        const int label = rng.next_double() < fairaudit::sigmoid(logit) ? 1 : 0;
        rows.push_back({signal, noise, static_cast<double>(group)});
        y.push_back(static_cast<std::uint8_t>(label));
        s.push_back(static_cast<std::uint8_t>(group));
    }
    return make_dataset(rows, y, s, {2});
}

// 60-row Adult-shaped CSV (same 15 columns and value vocabulary) for recipe
// mechanics; includes rows with "?" markers and test-style ">50K." labels.
inline std::string write_mini_adult_csv(const std::string& path) {
    std::ofstream out(path);
    out << "Age,workClass,fnlwgt,education,educNum,mariStat,occup,relationship,origEthn,"
           "gender,capitalGain,capitalLoss,hoursWeek,nativCountry,income\n";
    fairaudit::Rng rng(20240229);
    const char* work[] = {"Private", "Self-emp-not-inc", "Local-gov", "?"};
    const char* edu[] = {"Bachelors", "HS-grad", "Masters"};
    const char* mari[] = {"Married-civ-spouse", "Never-married", "Divorced"};
    const char* occ[] = {"Tech-support", "Sales", "Exec-managerial", "?"};
    const char* rel[] = {"Wife", "Own-child", "Husband", "Not-in-family"};
    const char* eth[] = {"White", "Black", "Asian-Pac-Islander"};
    const char* cty[] = {"United-States", "Mexico", "?"};
    for (int i = 0; i < 60; ++i) {
        const int age = 20 + static_cast<int>(rng.next_below(40));
        const char* w = work[rng.next_below(8) == 0 ? 3 : rng.next_below(3)];
        const char* o = occ[rng.next_below(8) == 0 ? 3 : rng.next_below(3)];
        const char* gender = rng.next_below(3) == 0 ? "Female" : "Male";
        const bool high = rng.next_below(4) == 0;
        const char* inc = high ? (i % 2 ? ">50K." : ">50K") : (i % 2 ? "<=50K." : "<=50K");
        out << age << ", " << w << ", " << 100000 + rng.next_below(50000) << ", "
            << edu[rng.next_below(3)] << ", " << 9 + rng.next_below(7) << ", "
            << mari[rng.next_below(3)] << ", " << o << ", " << rel[rng.next_below(4)] << ", "
            << eth[rng.next_below(3)] << ", " << gender << ", " << rng.next_below(5000) << ", "
            << rng.next_below(500) << ", " << 20 + rng.next_below(40) << ", "
            << cty[rng.next_below(10) == 0 ? 2 : rng.next_below(2)] << ", " << inc << "\n";
    }
    return path;
}

} // namespace fixtures
