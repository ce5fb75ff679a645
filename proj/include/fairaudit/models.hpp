#pragma once

// Model family dispatch and (de)serialization of trained scorers.

#include <cstdint>
#include <fstream>
#include <memory>
#include <string>

#include <json.hpp>

#include "dataset.hpp"
#include "errors.hpp"
#include "gbm.hpp"
#include "logistic.hpp"
#include "scorer.hpp"
#include "tree.hpp"

namespace fairaudit {

enum class ModelFamily { Logistic, Tree, GBM };

inline const char* to_string(ModelFamily f) {
    switch (f) {
        case ModelFamily::Logistic: return "logistic";
        case ModelFamily::Tree: return "tree";
        case ModelFamily::GBM: return "gbm";
    }
    return "?";
}

inline ModelFamily model_family_from_string(const std::string& s) {
    if (s == "logistic" || s == "lr") return ModelFamily::Logistic;
    if (s == "tree" || s == "dt") return ModelFamily::Tree;
    if (s == "gbm" || s == "gb") return ModelFamily::GBM;
    throw ConfigError("unknown model family '" + s + "' (expected lr|dt|gb)");
}

struct ModelParams {
    LRParams lr;
    TreeParams tree;
    GBMParams gbm;
};

inline ScorerPtr train_model(ModelFamily family, const EncodedDataset& ds,
                             const ModelParams& params, std::uint64_t seed) {
    switch (family) {
        case ModelFamily::Logistic: return train_logistic(ds, params.lr, seed);
        case ModelFamily::Tree: return train_tree(ds, params.tree);
        case ModelFamily::GBM: return train_gbm(ds, params.gbm, seed);
    }
    throw ArgumentError("train_model: unknown family");
}

inline ScorerPtr scorer_from_json(const nlohmann::json& j) {
    const int version = j.at("schema_version").get<int>();
    if (version != 1)
        throw ConfigError("unsupported model schema_version " + std::to_string(version));
    const std::string family = j.at("family").get<std::string>();
    if (family == "logistic") return LogisticModel::from_json(j);
    if (family == "tree") return DecisionTree::from_json(j);
    if (family == "gbm") return GradientBoostedModel::from_json(j);
    if (family == "constant") return std::make_shared<ConstantScorer>(j.at("value").get<double>());
    throw ConfigError("unknown model family in document: '" + family + "'");
}

inline ScorerPtr load_scorer(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open model file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("model file '" + path + "' is not valid JSON: " + e.what());
    }
    return scorer_from_json(j);
}

} // namespace fairaudit
