#pragma once

// Scorer: anything that maps a feature row to an estimate of
// eta(x) = P(Y=1|X=x) in [0,1]. A ThresholdedClassifier turns scores into
// binary decisions (score >= threshold => positive). Trained scorers are
// immutable and safe for concurrent scoring.

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dataset.hpp"
#include "errors.hpp"

namespace fairaudit {

class Scorer {
public:
    virtual ~Scorer() = default;
    virtual double score(std::span<const double> x) const = 0;
    virtual std::string family() const = 0;
    virtual nlohmann::ordered_json to_json() const = 0;
};

using ScorerPtr = std::shared_ptr<const Scorer>;

// Binary decision rule. Mitigation wrappers also see the row's group so they
// can route or threshold per group; plain classifiers ignore it.
class BinaryClassifier {
public:
    virtual ~BinaryClassifier() = default;
    virtual int predict(std::span<const double> x, int s) const = 0;
    virtual std::string variant() const = 0;
    virtual nlohmann::ordered_json to_json() const = 0;
};

class ThresholdedClassifier : public BinaryClassifier {
public:
    ThresholdedClassifier(ScorerPtr scorer, double threshold = 0.5)
        : scorer_(std::move(scorer)), threshold_(threshold) {
        if (!scorer_) throw ArgumentError("ThresholdedClassifier: null scorer");
        if (threshold_ < 0.0 || threshold_ > 1.0)
            throw ArgumentError("ThresholdedClassifier: threshold must be in [0,1]");
    }

    int predict(std::span<const double> x, int) const override {
        return scorer_->score(x) >= threshold_ ? 1 : 0;
    }

    double threshold() const { return threshold_; }
    const ScorerPtr& scorer() const { return scorer_; }
    std::string variant() const override { return "plain"; }

    nlohmann::ordered_json to_json() const override {
        nlohmann::ordered_json j;
        j["variant"] = variant();
        j["threshold"] = threshold_;
        j["model"] = scorer_->to_json();
        return j;
    }

private:
    ScorerPtr scorer_;
    double threshold_;
};

// Constant scorer (the empty-ensemble / base-rate model).
class ConstantScorer : public Scorer {
public:
    explicit ConstantScorer(double value) : value_(value) {
        if (value_ < 0.0 || value_ > 1.0)
            throw ArgumentError("ConstantScorer: value must be in [0,1]");
    }
    double score(std::span<const double>) const override { return value_; }
    std::string family() const override { return "constant"; }
    double value() const { return value_; }

    nlohmann::ordered_json to_json() const override {
        nlohmann::ordered_json j;
        j["schema_version"] = 1;
        j["family"] = family();
        j["value"] = value_;
        return j;
    }

private:
    double value_;
};

inline std::span<const double> dataset_row(const EncodedDataset& ds, std::size_t i) {
    return {ds.row(i), ds.d};
}

inline std::vector<std::uint8_t> predict_all(const BinaryClassifier& clf,
                                             const EncodedDataset& ds) {
    std::vector<std::uint8_t> out(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i)
        out[i] = static_cast<std::uint8_t>(clf.predict(dataset_row(ds, i), ds.s[i]));
    return out;
}

inline std::vector<double> score_all(const Scorer& scorer, const EncodedDataset& ds) {
    std::vector<double> out(ds.n);
    for (std::size_t i = 0; i < ds.n; ++i) out[i] = scorer.score(dataset_row(ds, i));
    return out;
}

} // namespace fairaudit
