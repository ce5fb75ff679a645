#pragma once

// EncodedDataset: the numeric design matrix plus label vector y, sensitive
// vector s and feature metadata. Categorical columns with two values become a
// single 0/1 indicator; columns with more values become a full one-hot block
// (no dropped reference category). Datasets are immutable after construction
// and safe to share read-only across parallel workers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "errors.hpp"
#include "rng.hpp"
#include "table.hpp"

namespace fairaudit {

struct FeatureInfo {
    std::string name;          // "age" or "workClass=Private"
    std::string origin_column; // raw column the feature came from
    bool is_continuous = false;
    std::string category;      // one-hot value; for a binary column, the value encoded as 1
};

struct EncodedDataset {
    std::vector<double> x;             // row-major n x d
    std::size_t n = 0;
    std::size_t d = 0;
    std::vector<std::uint8_t> y;       // {0,1}, 1 = positive decision
    std::vector<std::uint8_t> s;       // {0,1}, 0 = minority group
    std::vector<FeatureInfo> features; // size d
    std::vector<std::size_t> sensitive_feature_indices; // empty after removal
    std::string label_column, positive_value;
    std::string sensitive_column, protected_value;
    std::vector<std::string> notes;    // warnings (minority swap, no-op removals)

    const double* row(std::size_t i) const { return x.data() + i * d; }

    std::vector<std::string> feature_names() const {
        std::vector<std::string> names;
        names.reserve(features.size());
        for (const auto& f : features) names.push_back(f.name);
        return names;
    }

    // Row subset in the given index order.
    EncodedDataset subset(const std::vector<std::size_t>& rows) const {
        EncodedDataset out;
        out.n = rows.size();
        out.d = d;
        out.features = features;
        out.sensitive_feature_indices = sensitive_feature_indices;
        out.label_column = label_column;
        out.positive_value = positive_value;
        out.sensitive_column = sensitive_column;
        out.protected_value = protected_value;
        out.x.resize(out.n * d);
        out.y.resize(out.n);
        out.s.resize(out.n);
        for (std::size_t k = 0; k < rows.size(); ++k) {
            const std::size_t i = rows[k];
            if (i >= n) throw ArgumentError("subset: row index out of range");
            std::copy(row(i), row(i) + d, out.x.begin() + static_cast<std::ptrdiff_t>(k * d));
            out.y[k] = y[i];
            out.s[k] = s[i];
        }
        return out;
    }
};

struct LabelSelector {
    std::string column;
    std::string positive_value; // y = 1 iff cell == positive_value
};

struct SensitiveSelector {
    std::string column;
    std::string protected_value; // s = 0 iff cell == protected_value
};

// Encode a preprocessed table. The sensitive column must be categorical with
// exactly two values; the label column with at most two. If the configured
// protected group turns out to have the *higher* positive rate, the group
// labels are swapped and a warning note is recorded, keeping DI <= 1.
inline EncodedDataset encode(const RawTable& table, const LabelSelector& label,
                             const SensitiveSelector& sensitive) {
    const std::size_t label_j = table.column_index(label.column);
    const std::size_t sens_j = table.column_index(sensitive.column);
    if (table.column(label_j).kind != ColumnKind::Categorical)
        throw ConfigError("label column '" + label.column + "' must be categorical");
    if (table.column(sens_j).kind != ColumnKind::Categorical)
        throw ConfigError("sensitive column '" + sensitive.column + "' must be categorical");

    const auto label_values = table.distinct_values(label_j);
    if (label_values.size() > 2)
        throw ConfigError("label column '" + label.column + "' has " +
                          std::to_string(label_values.size()) +
                          " distinct values; expected at most 2 after normalization");
    bool label_found = false;
    for (const auto& v : label_values) label_found |= (v == label.positive_value);
    if (!label_found)
        throw ConfigError("positive value '" + label.positive_value +
                          "' not present in label column '" + label.column + "'");

    const auto sens_values = table.distinct_values(sens_j);
    if (sens_values.size() != 2)
        throw ConfigError("sensitive column '" + sensitive.column + "' has " +
                          std::to_string(sens_values.size()) +
                          " distinct values; exactly 2 required");
    if (sens_values[0] != sensitive.protected_value && sens_values[1] != sensitive.protected_value)
        throw ConfigError("protected value '" + sensitive.protected_value +
                          "' not present in sensitive column '" + sensitive.column + "'");

    EncodedDataset ds;
    ds.n = table.n_rows();
    ds.label_column = label.column;
    ds.positive_value = label.positive_value;
    ds.sensitive_column = sensitive.column;
    ds.protected_value = sensitive.protected_value;

    // Feature layout: every column except the label, in table order.
    struct Block {
        std::size_t col_j;
        bool continuous;
        std::vector<std::string> categories; // one-hot order (sorted); size 1 for binary
        std::size_t first_feature;
    };
    std::vector<Block> blocks;
    std::size_t d = 0;
    for (std::size_t j = 0; j < table.n_cols(); ++j) {
        if (j == label_j) continue;
        const auto& col = table.column(j);
        Block b;
        b.col_j = j;
        b.first_feature = d;
        if (col.kind == ColumnKind::Continuous) {
            b.continuous = true;
            ds.features.push_back({col.name, col.name, true, ""});
            d += 1;
        } else {
            b.continuous = false;
            auto vals = table.distinct_values(j);
            if (vals.empty())
                throw ConfigError("categorical column '" + col.name + "' has no values");
            if (vals.size() <= 2) {
                // single indicator: 1 for the lexicographically larger value
                const std::string one_value = vals.size() == 2 ? vals[1] : vals[0];
                b.categories = {one_value};
                ds.features.push_back({col.name + "=" + one_value, col.name, false, one_value});
                d += 1;
            } else {
                b.categories = vals;
                for (const auto& v : vals)
                    ds.features.push_back({col.name + "=" + v, col.name, false, v});
                d += vals.size();
            }
        }
        blocks.push_back(std::move(b));
    }
    ds.d = d;

    ds.x.assign(ds.n * ds.d, 0.0);
    ds.y.resize(ds.n);
    ds.s.resize(ds.n);

    for (std::size_t i = 0; i < ds.n; ++i) {
        const Cell& lab = table.at(i, label_j);
        if (!lab)
            throw ConfigError("missing label value at row " + std::to_string(i) +
                              "; drop_rows_with_missing before encoding");
        ds.y[i] = (*lab == label.positive_value) ? 1 : 0;
        const Cell& sv = table.at(i, sens_j);
        if (!sv)
            throw ConfigError("missing sensitive value at row " + std::to_string(i) +
                              "; drop_rows_with_missing before encoding");
        ds.s[i] = (*sv == sensitive.protected_value) ? 0 : 1;

        double* xr = ds.x.data() + i * ds.d;
        for (const auto& b : blocks) {
            const Cell& c = table.at(i, b.col_j);
            if (!c)
                throw ConfigError("missing value in column '" + table.column(b.col_j).name +
                                  "' at row " + std::to_string(i) +
                                  "; drop_rows_with_missing before encoding");
            if (b.continuous) {
                try {
                    std::size_t pos = 0;
                    xr[b.first_feature] = std::stod(*c, &pos);
                    if (pos != c->size()) throw std::invalid_argument(*c);
                } catch (const std::exception&) {
                    throw ParseError("cannot parse '" + *c + "' as number in column '" +
                                     table.column(b.col_j).name + "'");
                }
            } else if (b.categories.size() == 1) {
                xr[b.first_feature] = (*c == b.categories[0]) ? 1.0 : 0.0;
            } else {
                bool hit = false;
                for (std::size_t k = 0; k < b.categories.size(); ++k) {
                    if (*c == b.categories[k]) {
                        xr[b.first_feature + k] = 1.0;
                        hit = true;
                        break;
                    }
                }
                if (!hit)
                    throw ConfigError("unexpected category '" + *c + "' in column '" +
                                      table.column(b.col_j).name + "'");
            }
        }
    }

    for (const auto& b : blocks) {
        if (table.column(b.col_j).name == sensitive.column) {
            const std::size_t width = b.continuous ? 1 : b.categories.size();
            for (std::size_t k = 0; k < width; ++k)
                ds.sensitive_feature_indices.push_back(b.first_feature + k);
        }
    }

    // Minority auto-check: the paper's convention needs P(y=1|s=0) < P(y=1|s=1).
    std::size_t pos0 = 0, n0 = 0, pos1 = 0, n1 = 0;
    for (std::size_t i = 0; i < ds.n; ++i) {
        if (ds.s[i] == 0) { ++n0; pos0 += ds.y[i]; }
        else              { ++n1; pos1 += ds.y[i]; }
    }
    if (n0 == 0 || n1 == 0)
        throw ConfigError("sensitive column '" + sensitive.column +
                          "' has an empty group after encoding");
    const double rate0 = static_cast<double>(pos0) / static_cast<double>(n0);
    const double rate1 = static_cast<double>(pos1) / static_cast<double>(n1);
    if (rate0 > rate1) {
        for (auto& v : ds.s) v = static_cast<std::uint8_t>(1 - v);
        ds.notes.push_back(
            "minority auto-check: configured protected group '" + sensitive.protected_value +
            "' has the higher positive rate; group labels swapped so that S=0 is the group "
            "with the lower rate");
    }
    return ds;
}

struct FoldPlan {
    std::size_t k = 0;
    std::vector<std::size_t> assignments; // fold index in [0,k) per row
    std::uint64_t seed = 0;

    std::vector<std::size_t> fold_rows(std::size_t fold) const {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < assignments.size(); ++i)
            if (assignments[i] == fold) rows.push_back(i);
        return rows;
    }

    std::vector<std::size_t> complement_rows(std::size_t fold) const {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < assignments.size(); ++i)
            if (assignments[i] != fold) rows.push_back(i);
        return rows;
    }
};

// Shuffled k-fold partition; fold sizes differ by at most 1.
inline FoldPlan kfold(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw ArgumentError("kfold: k must be at least 2");
    if (k > n) throw ArgumentError("kfold: k exceeds the number of rows");
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    Rng rng(seed);
    rng.shuffle(perm);
    FoldPlan plan;
    plan.k = k;
    plan.seed = seed;
    plan.assignments.resize(n);
    for (std::size_t pos = 0; pos < n; ++pos)
        plan.assignments[perm[pos]] = pos % k;
    return plan;
}

// Uniform subsample without replacement within each S group; groups not in
// the map are kept whole. Row order of the original dataset is preserved.
inline EncodedDataset balanced_subsample(const EncodedDataset& ds,
                                         const std::map<int, std::size_t>& group_sizes,
                                         std::uint64_t seed) {
    std::vector<std::size_t> group_rows[2];
    for (std::size_t i = 0; i < ds.n; ++i) group_rows[ds.s[i]].push_back(i);

    std::vector<bool> keep(ds.n, true);
    for (const auto& [group, want] : group_sizes) {
        if (group != 0 && group != 1)
            throw ArgumentError("balanced_subsample: group must be 0 or 1");
        const auto& rows = group_rows[group];
        if (want > rows.size())
            throw ArgumentError("balanced_subsample: requested " + std::to_string(want) +
                                " rows for group S=" + std::to_string(group) + " but only " +
                                std::to_string(rows.size()) + " available");
        if (want == rows.size()) continue;
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(group)));
        auto chosen = rng.sample_without_replacement(rows.size(), want);
        std::vector<bool> in_sample(rows.size(), false);
        for (std::size_t c : chosen) in_sample[c] = true;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (!in_sample[r]) keep[rows[r]] = false;
    }

    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < ds.n; ++i)
        if (keep[i]) kept.push_back(i);
    return ds.subset(kept);
}

} // namespace fairaudit
