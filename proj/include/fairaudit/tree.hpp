#pragma once

// CART binary classification tree: Gini impurity, depth limit (root at depth
// 0), leaf score = leaf positive fraction. A node splits while it is impure,
// below the depth limit, and a candidate with both children of at least
// min_samples_leaf rows exists; zero-gain splits are allowed, which is what
// lets XOR-style targets be separated in two levels.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "dataset.hpp"
#include "errors.hpp"
#include "scorer.hpp"
#include "split.hpp"

namespace fairaudit {

struct TreeParams {
    std::size_t max_depth = 5;
    std::size_t min_samples_leaf = 1;

    void validate() const {
        if (max_depth < 1) throw ArgumentError("TreeParams: max_depth must be at least 1");
        if (min_samples_leaf < 1)
            throw ArgumentError("TreeParams: min_samples_leaf must be at least 1");
    }
};

struct TreeNode {
    int feature = -1; // -1 == leaf
    double threshold = 0.0;
    int left = -1, right = -1;
    double value = 0.0;       // leaf score
    std::size_t n_rows = 0;   // training rows that reached this node

    bool is_leaf() const { return feature < 0; }
};

class DecisionTree : public Scorer {
public:
    DecisionTree(std::vector<TreeNode> nodes, TreeParams params,
                 std::vector<std::string> feature_names)
        : nodes_(std::move(nodes)), params_(params), feature_names_(std::move(feature_names)) {}

    double score(std::span<const double> x) const override {
        int node = 0;
        while (!nodes_[static_cast<std::size_t>(node)].is_leaf()) {
            const TreeNode& nd = nodes_[static_cast<std::size_t>(node)];
            node = x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left : nd.right;
        }
        return nodes_[static_cast<std::size_t>(node)].value;
    }

    std::string family() const override { return "tree"; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }

    std::size_t depth() const { return depth_below(0); }

    nlohmann::ordered_json to_json() const override {
        nlohmann::ordered_json j;
        j["schema_version"] = 1;
        j["family"] = family();
        j["params"] = {{"max_depth", params_.max_depth},
                       {"min_samples_leaf", params_.min_samples_leaf}};
        j["feature_names"] = feature_names_;
        j["nodes"] = nodes_json();
        return j;
    }

    nlohmann::ordered_json nodes_json() const {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const auto& nd : nodes_) {
            nlohmann::ordered_json n;
            n["feature"] = nd.feature;
            n["threshold"] = nd.threshold;
            n["left"] = nd.left;
            n["right"] = nd.right;
            n["value"] = nd.value;
            n["n_rows"] = nd.n_rows;
            arr.push_back(std::move(n));
        }
        return arr;
    }

    static std::vector<TreeNode> nodes_from_json(const nlohmann::json& arr) {
        std::vector<TreeNode> nodes;
        for (const auto& n : arr) {
            TreeNode nd;
            nd.feature = n.at("feature").get<int>();
            nd.threshold = n.at("threshold").get<double>();
            nd.left = n.at("left").get<int>();
            nd.right = n.at("right").get<int>();
            nd.value = n.at("value").get<double>();
            nd.n_rows = n.value("n_rows", std::size_t{0});
            nodes.push_back(nd);
        }
        return nodes;
    }

    static std::shared_ptr<DecisionTree> from_json(const nlohmann::json& j) {
        TreeParams p;
        p.max_depth = j.at("params").at("max_depth").get<std::size_t>();
        p.min_samples_leaf = j.at("params").at("min_samples_leaf").get<std::size_t>();
        return std::make_shared<DecisionTree>(nodes_from_json(j.at("nodes")), p,
                                              j.at("feature_names").get<std::vector<std::string>>());
    }

private:
    std::size_t depth_below(int node) const {
        const TreeNode& nd = nodes_[static_cast<std::size_t>(node)];
        if (nd.is_leaf()) return 0;
        return 1 + std::max(depth_below(nd.left), depth_below(nd.right));
    }

    std::vector<TreeNode> nodes_;
    TreeParams params_;
    std::vector<std::string> feature_names_;
};

namespace detail {

struct GiniBuilder {
    const BinnedColumns& bins;
    const std::vector<std::uint8_t>& y;
    const TreeParams& params;
    std::vector<TreeNode>& nodes;

    // weighted Gini of a candidate split; SideStats carries (w=count, g=positives)
    static double weighted_gini(const SideStats& l, const SideStats& r) {
        auto side = [](const SideStats& s) {
            if (s.w <= 0.0) return 0.0;
            const double pr = s.g / s.w;
            return s.w * 2.0 * pr * (1.0 - pr);
        };
        return side(l) + side(r);
    }

    int build(std::vector<std::size_t>& rows, std::size_t depth) {
        std::size_t positives = 0;
        for (std::size_t i : rows) positives += y[i];
        const double frac = static_cast<double>(positives) / static_cast<double>(rows.size());

        const int id = static_cast<int>(nodes.size());
        nodes.push_back({});
        nodes[static_cast<std::size_t>(id)].value = frac;
        nodes[static_cast<std::size_t>(id)].n_rows = rows.size();

        const bool pure = positives == 0 || positives == rows.size();
        if (pure || depth >= params.max_depth || rows.size() < 2 * params.min_samples_leaf)
            return id;

        auto row_stat = [&](std::size_t i) {
            SideStats s;
            s.w = 1.0;
            s.g = static_cast<double>(y[i]);
            s.rows = 1;
            return s;
        };
        const SplitChoice split =
            find_best_split(bins, rows, row_stat, &GiniBuilder::weighted_gini,
                            params.min_samples_leaf);
        if (!split.found) return id;

        std::vector<std::size_t> left_rows, right_rows;
        left_rows.reserve(rows.size());
        right_rows.reserve(rows.size());
        for (std::size_t i : rows) {
            if (bins.value(split.feature, bins.rank(split.feature, i)) <= split.threshold)
                left_rows.push_back(i);
            else
                right_rows.push_back(i);
        }
        rows.clear();
        rows.shrink_to_fit();

        nodes[static_cast<std::size_t>(id)].feature = static_cast<int>(split.feature);
        nodes[static_cast<std::size_t>(id)].threshold = split.threshold;
        const int left = build(left_rows, depth + 1);
        nodes[static_cast<std::size_t>(id)].left = left;
        const int right = build(right_rows, depth + 1);
        nodes[static_cast<std::size_t>(id)].right = right;
        return id;
    }
};

} // namespace detail

inline std::shared_ptr<DecisionTree> train_tree(const EncodedDataset& ds,
                                                const TreeParams& params = {}) {
    params.validate();
    if (ds.n == 0) throw ArgumentError("train_tree: empty dataset");

    BinnedColumns bins(ds.x.data(), ds.n, ds.d);
    std::vector<TreeNode> nodes;
    detail::GiniBuilder builder{bins, ds.y, params, nodes};
    std::vector<std::size_t> rows(ds.n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    builder.build(rows, 0);
    return std::make_shared<DecisionTree>(std::move(nodes), params, ds.feature_names());
}

} // namespace fairaudit
