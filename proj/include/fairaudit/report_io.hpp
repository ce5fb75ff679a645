#pragma once

// Report serialization: a versioned JSON document and a flat CSV (one row per
// fold per metric, plus aggregate and reference rows) for external plotting.
// Key order and column order are fixed so identical runs produce identical
// bytes.

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "harness.hpp"
#include "inference.hpp"

namespace fairaudit {

using ordered_json = nlohmann::ordered_json;

inline ordered_json ci_to_json(const CIEstimate& ci) {
    ordered_json j;
    j["point"] = ci.point;
    j["sigma"] = ci.sigma;
    j["n"] = ci.n;
    j["level"] = ci.level;
    j["lower"] = ci.lower;
    j["upper"] = ci.upper;
    j["method"] = ci.method == CIMethod::DeltaMethod ? "delta" : "bootstrap-percentile";
    return j;
}

inline ordered_json optional_to_json(const std::optional<double>& v) {
    if (!v) return nullptr;
    return *v;
}

inline ordered_json test_to_json(const TestResult& t) {
    ordered_json j;
    j["statistic"] = t.statistic;
    j["beta"] = t.beta;
    j["alpha"] = t.alpha;
    j["direction"] = t.direction == TestDirection::FairnessEvidence ? "fairness-evidence"
                                                                    : "discrimination-evidence";
    j["reject"] = t.reject;
    j["p_value"] = t.p_value;
    return j;
}

inline ordered_json fold_to_json(const FoldRecord& fr) {
    ordered_json j;
    j["fold"] = fr.fold;
    j["seed"] = fr.seed;
    j["train_n"] = fr.train_n;
    j["test_n"] = fr.test_n;
    j["accuracy"] = optional_to_json(fr.accuracy);
    j["tpr"] = optional_to_json(fr.tpr);
    j["tnr"] = optional_to_json(fr.tnr);
    for (int g = 0; g < 2; ++g) {
        ordered_json gj;
        gj["accuracy"] = optional_to_json(fr.group_accuracy[g]);
        gj["tpr"] = optional_to_json(fr.group_tpr[g]);
        gj["tnr"] = optional_to_json(fr.group_tnr[g]);
        gj["fpr"] = optional_to_json(fr.group_fpr[g]);
        j["group_s" + std::to_string(g)] = std::move(gj);
    }
    j["di"] = fr.di ? ci_to_json(*fr.di) : ordered_json(nullptr);
    j["flip_fraction"] = optional_to_json(fr.flip_fraction);
    j["ref_fold_di"] = optional_to_json(fr.ref_fold_di);
    if (fr.thresholds) {
        ordered_json th;
        th["t0"] = fr.thresholds->t0;
        th["t1"] = fr.thresholds->t1;
        th["target_di"] = fr.thresholds->target_di;
        th["target_reached"] = fr.thresholds->target_reached;
        j["thresholds"] = std::move(th);
    } else {
        j["thresholds"] = nullptr;
    }
    return j;
}

inline ordered_json series_to_json(const MetricSeries& s) {
    ordered_json j;
    j["metric"] = s.metric;
    ordered_json folds = ordered_json::array();
    for (const auto& [fold, value] : s.fold_values) {
        ordered_json f;
        f["fold"] = fold;
        f["value"] = value;
        folds.push_back(std::move(f));
    }
    j["folds"] = std::move(folds);
    j["mean"] = optional_to_json(s.mean);
    if (s.spread) {
        ordered_json sp;
        sp["min"] = s.spread->min;
        sp["q1"] = s.spread->q1;
        sp["median"] = s.spread->median;
        sp["q3"] = s.spread->q3;
        sp["max"] = s.spread->max;
        j["spread"] = std::move(sp);
    } else {
        j["spread"] = nullptr;
    }
    j["ref"] = optional_to_json(s.ref);
    return j;
}

inline ordered_json report_to_json(const ExperimentReport& rep) {
    ordered_json j;
    j["label"] = rep.config.label;
    j["dataset"] = rep.config.dataset.name;
    j["sensitive"] = rep.config.dataset.sensitive.column;
    j["model"] = to_string(rep.config.family);
    j["strategy"] = to_string(rep.config.strategy);
    j["folds_count"] = rep.config.folds;
    j["seed"] = rep.config.seed;
    j["target_di"] = rep.config.target_di;
    j["ci_level"] = rep.config.ci_level;
    j["n_rows"] = rep.n_rows;
    j["notes"] = rep.dataset_notes;
    j["ref_full"] = rep.ref_full ? ci_to_json(*rep.ref_full) : ordered_json(nullptr);
    ordered_json folds = ordered_json::array();
    for (const auto& fr : rep.folds) folds.push_back(fold_to_json(fr));
    j["folds"] = std::move(folds);
    ordered_json series = ordered_json::array();
    for (const auto& s : summarize(rep).series) series.push_back(series_to_json(s));
    j["aggregates"] = std::move(series);
    return j;
}

inline ordered_json suite_to_json(const std::vector<SuiteEntry>& entries) {
    ordered_json j;
    j["schema_version"] = 1;
    ordered_json arr = ordered_json::array();
    for (const auto& e : entries) {
        if (e.report) {
            arr.push_back(report_to_json(*e.report));
        } else {
            ordered_json err;
            err["label"] = e.label;
            err["error"] = e.error;
            arr.push_back(std::move(err));
        }
    }
    j["experiments"] = std::move(arr);
    return j;
}

// ---- CSV -------------------------------------------------------------------

namespace detail {

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += "\"";
    return out;
}

inline std::string format_double(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

} // namespace detail

// One row per fold per metric, then aggregate rows (mean/min/q1/median/q3/max)
// and a ref row for the DI series. Column order is fixed.
inline std::string summary_to_csv(const std::vector<Summary>& summaries) {
    std::ostringstream out;
    out << "label,model,strategy,sensitive,metric,fold,value\n";
    for (const auto& sum : summaries) {
        const std::string prefix = detail::csv_escape(sum.label) + "," + sum.model + "," +
                                   sum.strategy + "," + detail::csv_escape(sum.sensitive) + ",";
        for (const auto& series : sum.series) {
            if (series.fold_values.empty()) continue;
            for (const auto& [fold, value] : series.fold_values)
                out << prefix << series.metric << "," << fold << ","
                    << detail::format_double(value) << "\n";
            if (series.mean)
                out << prefix << series.metric << ",mean," << detail::format_double(*series.mean)
                    << "\n";
            if (series.spread) {
                out << prefix << series.metric << ",min,"
                    << detail::format_double(series.spread->min) << "\n";
                out << prefix << series.metric << ",q1,"
                    << detail::format_double(series.spread->q1) << "\n";
                out << prefix << series.metric << ",median,"
                    << detail::format_double(series.spread->median) << "\n";
                out << prefix << series.metric << ",q3,"
                    << detail::format_double(series.spread->q3) << "\n";
                out << prefix << series.metric << ",max,"
                    << detail::format_double(series.spread->max) << "\n";
            }
            if (series.ref)
                out << prefix << series.metric << ",ref," << detail::format_double(*series.ref)
                    << "\n";
        }
    }
    return out.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + path);
    out << content;
}

} // namespace fairaudit
