#pragma once

// The four bias-handling strategies, as dataset transforms and classifier
// wrappers:
//   1. drop_sensitive      -- remove the S encoding from the features
//   2. testing-compliant   -- most favorable prediction over both S values
//   3. separate treatment  -- one model per S group, routed by the row's S
//   4. positive discrimination -- per-group thresholds calibrated so the
//      training DI reaches a target level (default 0.8), S=1 kept at 0.5
// plus the testing audit (flip-fraction) the wrappers defend against.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "counts.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "metrics.hpp"
#include "models.hpp"
#include "scorer.hpp"

namespace fairaudit {

// Remove the feature columns encoding S; the s vector is kept for auditing.
// Applying it to a dataset without encoded S is a no-op with a warning note.
inline EncodedDataset drop_sensitive(const EncodedDataset& ds) {
    if (ds.sensitive_feature_indices.empty()) {
        EncodedDataset out = ds;
        out.notes.push_back("drop_sensitive: sensitive features already removed; no-op");
        return out;
    }
    std::vector<bool> drop(ds.d, false);
    for (std::size_t j : ds.sensitive_feature_indices) drop[j] = true;

    EncodedDataset out;
    out.n = ds.n;
    out.y = ds.y;
    out.s = ds.s;
    out.label_column = ds.label_column;
    out.positive_value = ds.positive_value;
    out.sensitive_column = ds.sensitive_column;
    out.protected_value = ds.protected_value;
    out.notes = ds.notes;
    for (std::size_t j = 0; j < ds.d; ++j)
        if (!drop[j]) out.features.push_back(ds.features[j]);
    out.d = out.features.size();
    out.x.resize(out.n * out.d);
    for (std::size_t i = 0; i < ds.n; ++i) {
        std::size_t k = 0;
        const double* src = ds.row(i);
        double* dst = out.x.data() + i * out.d;
        for (std::size_t j = 0; j < ds.d; ++j)
            if (!drop[j]) dst[k++] = src[j];
    }
    return out;
}

namespace detail {

// Flip the S encoding inside a feature row: a single indicator toggles, a
// width-2 one-hot block swaps. Only binary S encodings are supported.
inline void flip_sensitive(std::vector<double>& x, const std::vector<std::size_t>& s_indices) {
    if (s_indices.size() == 1) {
        x[s_indices[0]] = 1.0 - x[s_indices[0]];
    } else if (s_indices.size() == 2) {
        std::swap(x[s_indices[0]], x[s_indices[1]]);
    } else {
        throw ArgumentError("flip_sensitive: S encoding must span 1 or 2 feature columns, got " +
                            std::to_string(s_indices.size()));
    }
}

} // namespace detail

// Testing-compliant wrapper: score is the most favorable of f(x,s) and
// f(x,s'); the decision is positive when either variant clears the threshold.
class TestingCompliantClassifier : public BinaryClassifier {
public:
    TestingCompliantClassifier(ScorerPtr scorer, std::vector<std::size_t> s_indices,
                               double threshold = 0.5)
        : scorer_(std::move(scorer)), s_indices_(std::move(s_indices)), threshold_(threshold) {
        if (!scorer_) throw ArgumentError("TestingCompliantClassifier: null scorer");
        if (s_indices_.empty())
            throw ArgumentError(
                "testing-compliant wrapper requires a classifier trained with S among its "
                "features (s_indices is empty)");
        if (s_indices_.size() > 2)
            throw ArgumentError("testing-compliant wrapper supports only binary S encodings");
    }

    double favorable_score(std::span<const double> x) const {
        buffer_.assign(x.begin(), x.end());
        const double as_is = scorer_->score(buffer_);
        detail::flip_sensitive(buffer_, s_indices_);
        const double flipped = scorer_->score(buffer_);
        return std::max(as_is, flipped);
    }

    int predict(std::span<const double> x, int) const override {
        return favorable_score(x) >= threshold_ ? 1 : 0;
    }

    std::string variant() const override { return "testing-compliant"; }
    double threshold() const { return threshold_; }

    nlohmann::ordered_json to_json() const override {
        nlohmann::ordered_json j;
        j["variant"] = variant();
        j["threshold"] = threshold_;
        j["sensitive_feature_indices"] = s_indices_;
        j["model"] = scorer_->to_json();
        return j;
    }

private:
    ScorerPtr scorer_;
    std::vector<std::size_t> s_indices_;
    double threshold_;
    mutable std::vector<double> buffer_;
};

inline std::shared_ptr<TestingCompliantClassifier>
make_testing_compliant(const ThresholdedClassifier& clf,
                       const std::vector<std::size_t>& s_indices) {
    return std::make_shared<TestingCompliantClassifier>(clf.scorer(), s_indices,
                                                        clf.threshold());
}

// Fraction of rows whose binary prediction changes when only the protected
// attribute is flipped (the legal "testing" procedure).
inline double testing_audit(const BinaryClassifier& clf, const EncodedDataset& ds) {
    if (ds.sensitive_feature_indices.empty())
        throw ArgumentError("testing_audit: S is not encoded in the dataset features");
    if (ds.n == 0) throw ArgumentError("testing_audit: empty dataset");
    std::vector<double> buffer;
    std::size_t flips = 0;
    for (std::size_t i = 0; i < ds.n; ++i) {
        const auto x = dataset_row(ds, i);
        const int original = clf.predict(x, ds.s[i]);
        buffer.assign(x.begin(), x.end());
        detail::flip_sensitive(buffer, ds.sensitive_feature_indices);
        const int flipped = clf.predict(buffer, 1 - ds.s[i]);
        flips += static_cast<std::size_t>(original != flipped);
    }
    return static_cast<double>(flips) / static_cast<double>(ds.n);
}

// One model per S group; prediction routes by the row's group.
class SeparateTreatmentClassifier : public BinaryClassifier {
public:
    SeparateTreatmentClassifier(ScorerPtr model_s0, ScorerPtr model_s1, double threshold = 0.5)
        : models_{std::move(model_s0), std::move(model_s1)}, threshold_(threshold) {
        if (!models_[0] || !models_[1])
            throw ArgumentError("SeparateTreatmentClassifier: null scorer");
    }

    int predict(std::span<const double> x, int s) const override {
        if (s != 0 && s != 1) throw ArgumentError("predict: s must be 0 or 1");
        return models_[static_cast<std::size_t>(s)]->score(x) >= threshold_ ? 1 : 0;
    }

    const ScorerPtr& model(int s) const { return models_[static_cast<std::size_t>(s)]; }
    std::string variant() const override { return "separate-treatment"; }

    nlohmann::ordered_json to_json() const override {
        nlohmann::ordered_json j;
        j["variant"] = variant();
        j["threshold"] = threshold_;
        j["model_s0"] = models_[0]->to_json();
        j["model_s1"] = models_[1]->to_json();
        return j;
    }

private:
    ScorerPtr models_[2];
    double threshold_;
};

inline std::shared_ptr<SeparateTreatmentClassifier>
train_separate(const EncodedDataset& ds, ModelFamily family, const ModelParams& params,
               std::uint64_t seed) {
    std::vector<std::size_t> rows[2];
    std::size_t positives[2] = {0, 0};
    for (std::size_t i = 0; i < ds.n; ++i) {
        rows[ds.s[i]].push_back(i);
        positives[ds.s[i]] += ds.y[i];
    }
    ScorerPtr models[2];
    for (int g = 0; g < 2; ++g) {
        const auto& r = rows[g];
        if (r.size() < 2 || positives[g] == 0 || positives[g] == r.size())
            throw DegenerateTrainingError(
                "separate treatment: group S=" + std::to_string(g) +
                " needs at least 2 rows with both labels present");
        models[g] = train_model(family, ds.subset(r),  params,
                                derive_seed(seed, static_cast<std::uint64_t>(g)));
    }
    return std::make_shared<SeparateTreatmentClassifier>(models[0], models[1]);
}

// Per-group decision thresholds; S=1 keeps the default.
struct GroupThresholds {
    double t0 = 0.5;
    double t1 = 0.5;
    double target_di = 0.8;
    bool target_reached = true;
};

class GroupThresholdClassifier : public BinaryClassifier {
public:
    GroupThresholdClassifier(ScorerPtr scorer, GroupThresholds thresholds)
        : scorer_(std::move(scorer)), thresholds_(thresholds) {
        if (!scorer_) throw ArgumentError("GroupThresholdClassifier: null scorer");
        if (thresholds_.t0 < 0 || thresholds_.t0 > 1 || thresholds_.t1 < 0 ||
            thresholds_.t1 > 1)
            throw ArgumentError("GroupThresholdClassifier: thresholds must be in [0,1]");
    }

    int predict(std::span<const double> x, int s) const override {
        if (s != 0 && s != 1) throw ArgumentError("predict: s must be 0 or 1");
        const double t = s == 0 ? thresholds_.t0 : thresholds_.t1;
        return scorer_->score(x) >= t ? 1 : 0;
    }

    const GroupThresholds& thresholds() const { return thresholds_; }
    const ScorerPtr& scorer() const { return scorer_; }
    std::string variant() const override { return "positive-discrimination"; }

    nlohmann::ordered_json to_json() const override {
        nlohmann::ordered_json j;
        j["variant"] = variant();
        j["t0"] = thresholds_.t0;
        j["t1"] = thresholds_.t1;
        j["target_di"] = thresholds_.target_di;
        j["target_reached"] = thresholds_.target_reached;
        j["model"] = scorer_->to_json();
        return j;
    }

private:
    ScorerPtr scorer_;
    GroupThresholds thresholds_;
};

// Calibrate t0 on the given (training) data: keep (0.5, 0.5) when its DI
// already reaches the target; otherwise the largest candidate threshold
// (midpoints of sorted distinct group-0 scores, plus 0 and 1) whose DI on
// this data reaches the target. If no candidate reaches it, the
// DI-maximizing candidate is returned with target_reached = false.
inline GroupThresholds calibrate_thresholds(const Scorer& scorer, const EncodedDataset& ds,
                                            double target_di = 0.8) {
    if (target_di <= 0.0) throw ArgumentError("calibrate_thresholds: target_di must be positive");
    std::vector<double> scores0;
    std::size_t n1 = 0, pos1 = 0;
    for (std::size_t i = 0; i < ds.n; ++i) {
        const double sc = scorer.score(dataset_row(ds, i));
        if (ds.s[i] == 0) {
            scores0.push_back(sc);
        } else {
            ++n1;
            pos1 += sc >= 0.5 ? 1u : 0u;
        }
    }
    if (scores0.empty() || n1 == 0)
        throw UndefinedMetricError("calibrate_thresholds: both S groups must be nonempty");
    if (pos1 == 0)
        throw UndefinedMetricError(
            "calibrate_thresholds: P(g=1|S=1) at threshold 0.5 is zero; DI undefined");

    const double denom = static_cast<double>(pos1) / static_cast<double>(n1);
    std::sort(scores0.begin(), scores0.end());
    const double n0 = static_cast<double>(scores0.size());

    // P(score >= t | S=0) via binary search on the sorted scores
    auto di_at = [&](double t) {
        const auto it = std::lower_bound(scores0.begin(), scores0.end(), t);
        const double ge = static_cast<double>(scores0.end() - it);
        return (ge / n0) / denom;
    };

    GroupThresholds out;
    out.target_di = target_di;
    if (di_at(0.5) >= target_di) return out; // no adaptation needed

    std::vector<double> candidates;
    candidates.push_back(0.0);
    for (std::size_t i = 0; i + 1 < scores0.size(); ++i) {
        if (scores0[i] < scores0[i + 1])
            candidates.push_back(0.5 * (scores0[i] + scores0[i + 1]));
    }
    candidates.push_back(1.0);

    // descending scan: the first candidate reaching the target is the largest
    double best_t = candidates.front();
    double best_di = -1.0;
    for (auto it = candidates.rbegin(); it != candidates.rend(); ++it) {
        const double di = di_at(*it);
        if (di >= target_di) {
            out.t0 = *it;
            out.target_reached = true;
            return out;
        }
        if (di > best_di) {
            best_di = di;
            best_t = *it;
        }
    }
    out.t0 = best_t;
    out.target_reached = false;
    return out;
}

struct PositiveDiscriminationReport {
    EvalMetrics metrics;           // calibrated classifier on ds
    EvalMetrics baseline_metrics;  // same scorer at thresholds (0.5, 0.5)
    DIValue di;                    // calibrated classifier DI
    DIValue baseline_di;
    GroupThresholds thresholds;
    // group-0 / group-1 false positive rates and their deltas vs baseline
    std::optional<double> fpr[2], baseline_fpr[2];
    std::size_t false_positives[2] = {0, 0};
    std::size_t baseline_false_positives[2] = {0, 0};
};

inline PositiveDiscriminationReport
positive_discrimination_report(const GroupThresholdClassifier& clf, const EncodedDataset& ds) {
    PositiveDiscriminationReport rep;
    rep.thresholds = clf.thresholds();
    rep.metrics = evaluate(clf, ds);
    rep.di = disparate_impact_of_classifier(clf, ds);

    GroupThresholdClassifier baseline(clf.scorer(), GroupThresholds{0.5, 0.5,
                                      clf.thresholds().target_di, true});
    rep.baseline_metrics = evaluate(baseline, ds);
    rep.baseline_di = disparate_impact_of_classifier(baseline, ds);

    for (int g = 0; g < 2; ++g) {
        rep.fpr[g] = rep.metrics.group_fpr(g);
        rep.baseline_fpr[g] = rep.baseline_metrics.group_fpr(g);
        rep.false_positives[g] = rep.metrics.group_false_positives(g);
        rep.baseline_false_positives[g] = rep.baseline_metrics.group_false_positives(g);
    }
    return rep;
}

} // namespace fairaudit
