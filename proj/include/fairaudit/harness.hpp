#pragma once

// Cross-validated experiments over (model family x mitigation strategy x
// sensitive attribute). For each fold the strategy is applied using training
// rows only (thresholds calibrated on the training folds are frozen before
// touching the held-out fold), all metrics are computed on the held-out fold,
// and the fold-level DI interval uses the held-out fold's n. Fold seeds are a
// pure function of (master seed, fold index); folds may run in parallel and
// reports are assembled in fold order, so output is scheduling-independent.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bootstrap.hpp"
#include "config.hpp"
#include "counts.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "evaluate.hpp"
#include "inference.hpp"
#include "metrics.hpp"
#include "mitigation.hpp"
#include "models.hpp"
#include "scorer.hpp"
#include "stats.hpp"

namespace fairaudit {

enum class Strategy { None, DropSensitive, TestingCompliant, Separate, PositiveDiscrimination };

inline const char* to_string(Strategy s) {
    switch (s) {
        case Strategy::None: return "none";
        case Strategy::DropSensitive: return "drop-sensitive";
        case Strategy::TestingCompliant: return "testing-compliant";
        case Strategy::Separate: return "separate";
        case Strategy::PositiveDiscrimination: return "positive-discrimination";
    }
    return "?";
}

inline Strategy strategy_from_string(const std::string& s) {
    if (s == "none") return Strategy::None;
    if (s == "drop-sensitive") return Strategy::DropSensitive;
    if (s == "testing-compliant") return Strategy::TestingCompliant;
    if (s == "separate") return Strategy::Separate;
    if (s == "positive-discrimination") return Strategy::PositiveDiscrimination;
    throw ConfigError("unknown strategy '" + s + "'");
}

struct BalanceSpec {
    bool equalize_majority_to_minority = false;
    std::map<int, std::size_t> explicit_sizes; // overrides when non-empty
    bool active() const { return equalize_majority_to_minority || !explicit_sizes.empty(); }
};

struct ExperimentConfig {
    std::string label;
    DatasetConfig dataset;
    ModelFamily family = ModelFamily::Logistic;
    ModelParams params;
    Strategy strategy = Strategy::None;
    std::size_t folds = 10;
    std::uint64_t seed = 0;
    double target_di = 0.8;
    double ci_level = 0.95;
    BalanceSpec balance;
};

struct FoldRecord {
    std::size_t fold = 0;
    std::uint64_t seed = 0;
    std::size_t train_n = 0, test_n = 0;
    std::optional<double> accuracy, tpr, tnr;
    std::optional<double> group_accuracy[2], group_tpr[2], group_tnr[2], group_fpr[2];
    std::optional<CIEstimate> di; // classifier DI on the held-out fold
    std::optional<double> flip_fraction;
    std::optional<double> ref_fold_di; // data DI of the held-out fold
    std::optional<GroupThresholds> thresholds;
};

struct ExperimentReport {
    ExperimentConfig config;
    std::size_t n_rows = 0; // after balancing
    std::optional<CIEstimate> ref_full; // data DI on the whole dataset
    std::vector<FoldRecord> folds;
    std::vector<std::string> dataset_notes;
};

namespace detail {

struct FoldOutcome {
    FoldRecord record;
};

inline FoldRecord run_fold(const ExperimentConfig& cfg, const EncodedDataset& ds,
                           const FoldPlan& plan, std::size_t fold) {
    FoldRecord rec;
    rec.fold = fold;
    rec.seed = derive_seed(cfg.seed, 1000 + fold);

    const auto train_rows = plan.complement_rows(fold);
    const auto test_rows = plan.fold_rows(fold);
    EncodedDataset train = ds.subset(train_rows);
    EncodedDataset test = ds.subset(test_rows);
    rec.train_n = train.n;
    rec.test_n = test.n;

    std::shared_ptr<const BinaryClassifier> clf;
    switch (cfg.strategy) {
        case Strategy::None:
        case Strategy::DropSensitive: {
            // DropSensitive datasets had their S columns removed before folding
            auto scorer = train_model(cfg.family, train, cfg.params, rec.seed);
            clf = std::make_shared<ThresholdedClassifier>(std::move(scorer));
            break;
        }
        case Strategy::TestingCompliant: {
            if (ds.sensitive_feature_indices.empty())
                throw ConfigError("testing-compliant strategy requires S among the features");
            auto scorer = train_model(cfg.family, train, cfg.params, rec.seed);
            ThresholdedClassifier base(std::move(scorer));
            clf = make_testing_compliant(base, train.sensitive_feature_indices);
            break;
        }
        case Strategy::Separate: {
            clf = train_separate(train, cfg.family, cfg.params, rec.seed);
            break;
        }
        case Strategy::PositiveDiscrimination: {
            auto scorer = train_model(cfg.family, train, cfg.params, rec.seed);
            const GroupThresholds th = calibrate_thresholds(*scorer, train, cfg.target_di);
            rec.thresholds = th;
            clf = std::make_shared<GroupThresholdClassifier>(std::move(scorer), th);
            break;
        }
    }

    const auto yhat = predict_all(*clf, test);
    const EvalMetrics metrics = evaluate_predictions(test.y, test.s, yhat);
    rec.accuracy = metrics.accuracy();
    rec.tpr = metrics.tpr();
    rec.tnr = metrics.tnr();
    for (int g = 0; g < 2; ++g) {
        rec.group_accuracy[g] = metrics.group_accuracy(g);
        rec.group_tpr[g] = metrics.group_tpr(g);
        rec.group_tnr[g] = metrics.group_tnr(g);
        rec.group_fpr[g] = metrics.group_fpr(g);
    }

    const GroupedCounts counts = count_groups(test.y, test.s, &yhat);
    try {
        rec.di = di_confidence_interval(counts, cfg.ci_level, DITarget::Classifier);
    } catch (const UndefinedMetricError&) {
        rec.di = std::nullopt;
    }
    try {
        rec.ref_fold_di = disparate_impact(counts).value;
    } catch (const UndefinedMetricError&) {
        rec.ref_fold_di = std::nullopt;
    }
    if (!test.sensitive_feature_indices.empty()) {
        rec.flip_fraction = testing_audit(*clf, test);
    }
    return rec;
}

} // namespace detail

inline ExperimentReport run_cross_validation(const ExperimentConfig& cfg,
                                             const EncodedDataset& loaded,
                                             std::size_t threads = 0) {
    if (cfg.folds < 2) throw ArgumentError("run_cross_validation: folds must be at least 2");

    EncodedDataset ds = loaded;
    if (cfg.balance.active()) {
        std::map<int, std::size_t> sizes = cfg.balance.explicit_sizes;
        if (sizes.empty()) {
            std::size_t count[2] = {0, 0};
            for (auto v : ds.s) ++count[v];
            const std::size_t minority = std::min(count[0], count[1]);
            sizes[count[0] <= count[1] ? 1 : 0] = minority;
        }
        ds = balanced_subsample(ds, sizes, derive_seed(cfg.seed, 0xBA1AULL));
    }
    if (cfg.strategy == Strategy::DropSensitive) {
        if (ds.sensitive_feature_indices.empty())
            throw ConfigError("drop-sensitive strategy: S is not encoded in the features");
        ds = drop_sensitive(ds);
    }

    ExperimentReport report;
    report.config = cfg;
    report.n_rows = ds.n;
    report.dataset_notes = ds.notes;
    try {
        report.ref_full =
            di_confidence_interval(count_groups(ds.y, ds.s), cfg.ci_level, DITarget::Data);
    } catch (const UndefinedMetricError&) {
        report.ref_full = std::nullopt;
    }

    const FoldPlan plan = kfold(ds.n, cfg.folds, derive_seed(cfg.seed, 0xF01DULL));

    auto run_one = [&](std::size_t fold) {
        try {
            return detail::run_fold(cfg, ds, plan, fold);
        } catch (const DegenerateTrainingError& e) {
            throw DegenerateTrainingError("fold " + std::to_string(fold) + ": " + e.what());
        } catch (const UndefinedMetricError& e) {
            throw UndefinedMetricError("fold " + std::to_string(fold) + ": " + e.what());
        }
    };

    if (threads == 0) threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    threads = std::min(threads, cfg.folds);
    if (threads <= 1) {
        for (std::size_t f = 0; f < cfg.folds; ++f) report.folds.push_back(run_one(f));
        return report;
    }

    std::vector<std::optional<FoldRecord>> results(cfg.folds);
    std::vector<std::exception_ptr> errors(cfg.folds);
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t f = next.fetch_add(1);
            if (f >= cfg.folds) return;
            try {
                results[f] = run_one(f);
            } catch (...) {
                errors[f] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    // assemble (and rethrow) in fold-index order
    for (std::size_t f = 0; f < cfg.folds; ++f) {
        if (errors[f]) std::rethrow_exception(errors[f]);
        report.folds.push_back(std::move(*results[f]));
    }
    return report;
}

inline ExperimentReport run_cross_validation(const ExperimentConfig& cfg,
                                             std::size_t threads = 0) {
    return run_cross_validation(cfg, load_dataset(cfg.dataset), threads);
}

struct SuiteEntry {
    std::string label;
    std::optional<ExperimentReport> report;
    std::string error; // non-empty when the config failed
};

// Maps run_cross_validation over the configs; a failing config records its
// error and the suite continues. Datasets are loaded once per distinct config
// name.
inline std::vector<SuiteEntry> run_suite(const std::vector<ExperimentConfig>& configs,
                                         std::size_t threads = 0) {
    std::vector<SuiteEntry> out;
    std::map<std::string, EncodedDataset> cache;
    for (const auto& cfg : configs) {
        SuiteEntry entry;
        entry.label = cfg.label;
        try {
            auto it = cache.find(cfg.dataset.name);
            if (it == cache.end())
                it = cache.emplace(cfg.dataset.name, load_dataset(cfg.dataset)).first;
            entry.report = run_cross_validation(cfg, it->second, threads);
        } catch (const Error& e) {
            entry.error = e.what();
        }
        out.push_back(std::move(entry));
    }
    return out;
}

// ---- summaries -------------------------------------------------------------

struct MetricSeries {
    std::string metric;
    std::vector<std::pair<std::size_t, double>> fold_values; // (fold, value), defined only
    std::optional<double> mean;
    std::optional<FiveNumberSummary> spread;
    std::optional<double> ref; // reference (data) DI, for the DI series
};

struct Summary {
    std::string label;
    std::string model, strategy, sensitive;
    std::size_t folds = 0;
    std::vector<MetricSeries> series;
};

namespace detail {

template <typename Getter>
inline MetricSeries build_series(const ExperimentReport& rep, const std::string& name,
                                 Getter get) {
    MetricSeries s;
    s.metric = name;
    std::vector<double> values;
    for (const auto& fr : rep.folds) {
        const std::optional<double> v = get(fr);
        if (v) {
            s.fold_values.emplace_back(fr.fold, *v);
            values.push_back(*v);
        }
    }
    if (!values.empty()) {
        s.mean = mean(values);
        s.spread = five_number_summary(values);
    }
    return s;
}

} // namespace detail

inline Summary summarize(const ExperimentReport& rep) {
    if (rep.folds.empty()) throw ArgumentError("summarize: report has no folds");
    Summary sum;
    sum.label = rep.config.label;
    sum.model = to_string(rep.config.family);
    sum.strategy = to_string(rep.config.strategy);
    sum.sensitive = rep.config.dataset.sensitive.column;
    sum.folds = rep.folds.size();

    auto di_series = detail::build_series(
        rep, "di", [](const FoldRecord& fr) -> std::optional<double> {
            if (!fr.di) return std::nullopt;
            return fr.di->point;
        });
    if (rep.ref_full) di_series.ref = rep.ref_full->point;
    sum.series.push_back(std::move(di_series));

    auto ref_series = detail::build_series(
        rep, "ref_fold_di", [](const FoldRecord& fr) { return fr.ref_fold_di; });
    if (rep.ref_full) ref_series.ref = rep.ref_full->point;
    sum.series.push_back(std::move(ref_series));

    sum.series.push_back(
        detail::build_series(rep, "accuracy", [](const FoldRecord& fr) { return fr.accuracy; }));
    sum.series.push_back(
        detail::build_series(rep, "tpr", [](const FoldRecord& fr) { return fr.tpr; }));
    sum.series.push_back(
        detail::build_series(rep, "tnr", [](const FoldRecord& fr) { return fr.tnr; }));
    for (int g = 0; g < 2; ++g) {
        const std::string suffix = "_s" + std::to_string(g);
        sum.series.push_back(detail::build_series(
            rep, "tpr" + suffix, [g](const FoldRecord& fr) { return fr.group_tpr[g]; }));
        sum.series.push_back(detail::build_series(
            rep, "tnr" + suffix, [g](const FoldRecord& fr) { return fr.group_tnr[g]; }));
        sum.series.push_back(detail::build_series(
            rep, "fpr" + suffix, [g](const FoldRecord& fr) { return fr.group_fpr[g]; }));
    }
    sum.series.push_back(detail::build_series(
        rep, "flip_fraction", [](const FoldRecord& fr) { return fr.flip_fraction; }));
    return sum;
}

// ---- presets ---------------------------------------------------------------

// Fig. 3-8 experiment presets over the Adult dataset. fig8 compares all three
// models under the two Section-5 strategies against the untreated baseline.
inline std::vector<ExperimentConfig> experiment_preset(const std::string& name,
                                                       std::uint64_t seed,
                                                       std::size_t folds = 10) {
    static const std::vector<std::pair<ModelFamily, const char*>> families = {
        {ModelFamily::Logistic, "lr"}, {ModelFamily::Tree, "dt"}, {ModelFamily::GBM, "gb"}};

    auto make = [&](const std::string& preset, ModelFamily fam, const char* fam_tag,
                    Strategy strategy, const std::string& sensitive, bool balance) {
        ExperimentConfig cfg;
        cfg.label = preset + "/" + fam_tag + "/" + sensitive +
                    (strategy == Strategy::None ? "" : std::string("/") + to_string(strategy));
        cfg.dataset = adult_config(sensitive);
        cfg.family = fam;
        cfg.strategy = strategy;
        cfg.folds = folds;
        cfg.seed = derive_seed(seed, fnv1a(cfg.label));
        cfg.balance.equalize_majority_to_minority = balance;
        return cfg;
    };

    std::vector<ExperimentConfig> out;
    if (name == "fig3") {
        for (const auto& [fam, tag] : families)
            out.push_back(make(name, fam, tag, Strategy::None, "gender", false));
    } else if (name == "fig4") {
        for (const char* sens : {"gender", "ethnic"})
            for (const auto& [fam, tag] : families)
                out.push_back(make(name, fam, tag, Strategy::None, sens, false));
    } else if (name == "fig5") {
        for (const auto& [fam, tag] : families)
            out.push_back(make(name, fam, tag, Strategy::None, "gender", true));
    } else if (name == "fig6_top") {
        for (const auto& [fam, tag] : families)
            out.push_back(make(name, fam, tag, Strategy::DropSensitive, "gender", false));
    } else if (name == "fig6_bottom") {
        for (const auto& [fam, tag] : families)
            out.push_back(make(name, fam, tag, Strategy::TestingCompliant, "gender", false));
    } else if (name == "fig7_top") {
        for (const auto& [fam, tag] : families)
            out.push_back(make(name, fam, tag, Strategy::Separate, "gender", false));
    } else if (name == "fig7_bottom") {
        for (const auto& [fam, tag] : families)
            out.push_back(
                make(name, fam, tag, Strategy::PositiveDiscrimination, "gender", false));
    } else if (name == "fig8") {
        for (const Strategy st :
             {Strategy::None, Strategy::Separate, Strategy::PositiveDiscrimination})
            for (const auto& [fam, tag] : families)
                out.push_back(make(name, fam, tag, st, "gender", false));
    } else {
        throw ConfigError("unknown preset '" + name +
                          "' (valid: fig3 fig4 fig5 fig6_top fig6_bottom fig7_top "
                          "fig7_bottom fig8)");
    }
    return out;
}

inline const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"fig3",    "fig4",       "fig5",
                                                   "fig6_top", "fig6_bottom", "fig7_top",
                                                   "fig7_bottom", "fig8"};
    return names;
}

} // namespace fairaudit
