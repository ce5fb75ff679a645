#pragma once

// Gradient boosting for logistic loss: an additive model of depth-limited
// regression trees fit to gradient/hessian statistics, Newton leaf values,
// shrinkage baked into the stored leaves. If a round would increase the
// training log-loss its contribution is halved until it does not (and dropped
// entirely when even that fails), so the recorded per-round loss is
// non-increasing for any parameter choice.

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
#include "stats.hpp"
#include "tree.hpp"

namespace fairaudit {

struct GBMParams {
    std::size_t n_rounds = 100;
    std::size_t tree_depth = 3;
    double shrinkage = 0.1;
    std::size_t min_samples_leaf = 1;

    void validate() const {
        if (tree_depth < 1) throw ArgumentError("GBMParams: tree_depth must be at least 1");
        if (shrinkage < 0.0) throw ArgumentError("GBMParams: shrinkage must be non-negative");
        if (min_samples_leaf < 1)
            throw ArgumentError("GBMParams: min_samples_leaf must be at least 1");
    }
};

class GradientBoostedModel : public Scorer {
public:
    GradientBoostedModel(double base_log_odds, std::vector<std::vector<TreeNode>> trees,
                         GBMParams params, std::vector<double> loss_history,
                         std::vector<std::string> feature_names)
        : base_(base_log_odds), trees_(std::move(trees)), params_(params),
          loss_history_(std::move(loss_history)), feature_names_(std::move(feature_names)) {}

    double score(std::span<const double> x) const override {
        double f = base_;
        for (const auto& tree : trees_) {
            int node = 0;
            while (!tree[static_cast<std::size_t>(node)].is_leaf()) {
                const TreeNode& nd = tree[static_cast<std::size_t>(node)];
                node = x[static_cast<std::size_t>(nd.feature)] <= nd.threshold ? nd.left
                                                                               : nd.right;
            }
            f += tree[static_cast<std::size_t>(node)].value;
        }
        return sigmoid(f);
    }

    std::string family() const override { return "gbm"; }
    double base_log_odds() const { return base_; }
    std::size_t n_trees() const { return trees_.size(); }
    const std::vector<double>& loss_history() const { return loss_history_; }

    nlohmann::ordered_json to_json() const override {
        nlohmann::ordered_json j;
        j["schema_version"] = 1;
        j["family"] = family();
        j["params"] = {{"n_rounds", params_.n_rounds},
                       {"tree_depth", params_.tree_depth},
                       {"shrinkage", params_.shrinkage},
                       {"min_samples_leaf", params_.min_samples_leaf}};
        j["feature_names"] = feature_names_;
        j["base_log_odds"] = base_;
        nlohmann::ordered_json trees = nlohmann::ordered_json::array();
        for (const auto& t : trees_) {
            DecisionTree helper(t, {}, {});
            trees.push_back(helper.nodes_json());
        }
        j["trees"] = std::move(trees);
        j["loss_history"] = loss_history_;
        return j;
    }

    static std::shared_ptr<GradientBoostedModel> from_json(const nlohmann::json& j) {
        GBMParams p;
        p.n_rounds = j.at("params").at("n_rounds").get<std::size_t>();
        p.tree_depth = j.at("params").at("tree_depth").get<std::size_t>();
        p.shrinkage = j.at("params").at("shrinkage").get<double>();
        p.min_samples_leaf = j.at("params").at("min_samples_leaf").get<std::size_t>();
        std::vector<std::vector<TreeNode>> trees;
        for (const auto& t : j.at("trees")) trees.push_back(DecisionTree::nodes_from_json(t));
        return std::make_shared<GradientBoostedModel>(
            j.at("base_log_odds").get<double>(), std::move(trees), p,
            j.value("loss_history", std::vector<double>{}),
            j.at("feature_names").get<std::vector<std::string>>());
    }

private:
    double base_;
    std::vector<std::vector<TreeNode>> trees_;
    GBMParams params_;
    std::vector<double> loss_history_;
    std::vector<std::string> feature_names_;
};

namespace detail {

// Regression tree on (gradient, hessian) sums; leaf value = -G/H. SideStats
// carries (w = hessian sum, g = gradient sum).
struct GradientTreeBuilder {
    const BinnedColumns& bins;
    const std::vector<double>& grad;
    const std::vector<double>& hess;
    std::size_t max_depth;
    std::size_t min_samples_leaf;
    std::vector<TreeNode>& nodes;

    static double neg_gain(const SideStats& l, const SideStats& r) {
        auto half = [](const SideStats& s) {
            return s.g * s.g / std::max(s.w, 1e-12);
        };
        return -(half(l) + half(r));
    }

    int build(std::vector<std::size_t>& rows, std::size_t depth) {
        double g_sum = 0.0, h_sum = 0.0;
        for (std::size_t i : rows) {
            g_sum += grad[i];
            h_sum += hess[i];
        }
        const int id = static_cast<int>(nodes.size());
        nodes.push_back({});
        nodes[static_cast<std::size_t>(id)].value = -g_sum / std::max(h_sum, 1e-12);
        nodes[static_cast<std::size_t>(id)].n_rows = rows.size();

        if (depth >= max_depth || rows.size() < 2 * min_samples_leaf) return id;

        auto row_stat = [&](std::size_t i) {
            SideStats s;
            s.w = hess[i];
            s.g = grad[i];
            s.rows = 1;
            return s;
        };
        const SplitChoice split = find_best_split(bins, rows, row_stat,
                                                  &GradientTreeBuilder::neg_gain,
                                                  min_samples_leaf);
        if (!split.found) return id;
        // keep the split only if it improves on the unsplit score
        const double parent_obj = -(g_sum * g_sum / std::max(h_sum, 1e-12));
        if (split.objective >= parent_obj) return id;

        std::vector<std::size_t> left_rows, right_rows;
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

inline std::shared_ptr<GradientBoostedModel> train_gbm(const EncodedDataset& ds,
                                                       const GBMParams& params = {},
                                                       std::uint64_t /*seed*/ = 0) {
    params.validate();
    if (ds.n < 2) throw DegenerateTrainingError("gbm needs at least 2 rows");
    std::size_t pos = 0;
    for (auto v : ds.y) pos += v;
    if (pos == 0 || pos == ds.n) throw DegenerateTrainingError("gbm needs both classes present");

    const std::size_t n = ds.n;
    const double base_rate = static_cast<double>(pos) / static_cast<double>(n);
    const double base = std::log(base_rate / (1.0 - base_rate));

    BinnedColumns bins(ds.x.data(), n, ds.d);

    std::vector<double> f(n, base), p(n), grad(n), hess(n);
    auto log_loss = [&]() {
        double loss = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            loss += log1p_exp_neg(ds.y[i] ? f[i] : -f[i]);
        return loss / static_cast<double>(n);
    };

    std::vector<double> loss_history;
    double loss = log_loss();
    loss_history.push_back(loss);

    std::vector<std::vector<TreeNode>> trees;
    std::vector<std::size_t> leaf_of(n);

    for (std::size_t round = 0; round < params.n_rounds; ++round) {
        for (std::size_t i = 0; i < n; ++i) {
            p[i] = sigmoid(f[i]);
            grad[i] = p[i] - static_cast<double>(ds.y[i]);
            hess[i] = p[i] * (1.0 - p[i]);
        }

        std::vector<TreeNode> tree;
        detail::GradientTreeBuilder builder{bins,  grad, hess, params.tree_depth,
                                            params.min_samples_leaf, tree};
        std::vector<std::size_t> rows(n);
        std::iota(rows.begin(), rows.end(), std::size_t{0});
        builder.build(rows, 0);

        // shrinkage into stored leaf values
        for (auto& nd : tree)
            if (nd.is_leaf()) nd.value *= params.shrinkage;

        for (std::size_t i = 0; i < n; ++i) {
            int node = 0;
            while (!tree[static_cast<std::size_t>(node)].is_leaf()) {
                const TreeNode& nd = tree[static_cast<std::size_t>(node)];
                node = ds.x[i * ds.d + static_cast<std::size_t>(nd.feature)] <= nd.threshold
                           ? nd.left
                           : nd.right;
            }
            leaf_of[i] = static_cast<std::size_t>(node);
            f[i] += tree[leaf_of[i]].value;
        }

        // never let a round increase the training loss
        double new_loss = log_loss();
        int halvings = 0;
        while (new_loss > loss && halvings < 40) {
            for (std::size_t i = 0; i < n; ++i) f[i] -= 0.5 * tree[leaf_of[i]].value;
            for (auto& nd : tree)
                if (nd.is_leaf()) nd.value *= 0.5;
            new_loss = log_loss();
            ++halvings;
        }
        if (new_loss > loss) {
            for (std::size_t i = 0; i < n; ++i) f[i] -= tree[leaf_of[i]].value;
            break;
        }
        loss = new_loss;
        loss_history.push_back(loss);
        trees.push_back(std::move(tree));
    }

    return std::make_shared<GradientBoostedModel>(base, std::move(trees), params,
                                                  std::move(loss_history), ds.feature_names());
}

} // namespace fairaudit
