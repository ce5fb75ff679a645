// fairaudit CLI: auditing, training, mitigation, experiment suites and
// bootstrap comparison as subcommands with machine-readable output.
//
// Exit codes: 0 success; 1 usage, I/O or config error; 2 undefined metric;
// 3 degenerate training.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <fairaudit/fairaudit.hpp>

namespace fa = fairaudit;
namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace {

struct OutputOptions {
    std::string format = "human"; // human|json|csv
    std::string out_path;         // empty = stdout
};

void emit(const OutputOptions& opt, const std::string& content) {
    if (opt.out_path.empty()) {
        std::cout << content;
        if (!content.empty() && content.back() != '\n') std::cout << '\n';
    } else {
        fa::write_text_file(opt.out_path, content);
    }
}

std::string round4(double v) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << v;
    return os.str();
}

// --config value: built-in name, file path, or name under $FAIRAUDIT_CONFIG_DIR
std::string resolve_config_arg(const std::string& arg) {
    if (fa::is_builtin_config(arg) || fs::exists(arg)) return arg;
    if (const char* dir = std::getenv("FAIRAUDIT_CONFIG_DIR"); dir && *dir) {
        for (const std::string candidate :
             {std::string(dir) + "/" + arg, std::string(dir) + "/" + arg + ".json"}) {
            if (fs::exists(candidate)) return candidate;
        }
    }
    return arg; // let the loader produce the error
}

fa::DatasetConfig load_config(const std::string& arg, const std::string& csv_override) {
    fa::DatasetConfig cfg = fa::load_dataset_config(resolve_config_arg(arg));
    if (!csv_override.empty()) cfg.csv_path = csv_override;
    return cfg;
}

// Row-aligned single-column CSV of {0,1}; an optional "prediction" header
// line is tolerated.
std::vector<std::uint8_t> load_predictions(const std::string& path, std::size_t expected_n) {
    std::ifstream in(path);
    if (!in) throw fa::IoError("cannot open predictions file: " + path);
    std::vector<std::uint8_t> out;
    std::string line;
    long line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::string v = fa::detail::trim(line);
        if (v.empty()) continue;
        if (line_no == 1 && v != "0" && v != "1") continue; // header
        if (v == "0") out.push_back(0);
        else if (v == "1") out.push_back(1);
        else throw fa::ParseError("prediction must be 0 or 1, got '" + v + "'", line_no);
    }
    if (out.size() != expected_n)
        throw fa::ConfigError("predictions file has " + std::to_string(out.size()) +
                              " rows but the dataset has " + std::to_string(expected_n) +
                              " after preprocessing");
    return out;
}

std::string human_ci(const std::string& name, const fa::CIEstimate& ci) {
    std::ostringstream os;
    os << name << " " << round4(ci.point) << "  " << static_cast<int>(ci.level * 100 + 0.5)
       << "% CI [" << round4(ci.lower) << ", " << round4(ci.upper) << "]  sigma "
       << round4(ci.sigma) << "  n " << ci.n;
    return os.str();
}

std::string human_test(const fa::TestResult& t) {
    std::ostringstream os;
    if (t.direction == fa::TestDirection::FairnessEvidence)
        os << "  H0: DI <= " << round4(t.beta) << " vs H1: DI > " << round4(t.beta);
    else
        os << "  H0: DI >= " << round4(t.beta) << " vs H1: DI < " << round4(t.beta);
    os << "  stat " << round4(t.statistic) << "  p " << round4(t.p_value) << "  "
       << (t.reject ? "REJECT" : "no rejection") << " at alpha " << round4(t.alpha);
    return os.str();
}

// ---- audit ------------------------------------------------------------------

int cmd_audit(const std::string& config_arg, const std::string& csv_override,
              const std::string& predictions_path, const std::string& model_path,
              double level, double beta, double alpha, double threshold,
              const OutputOptions& out) {
    const fa::DatasetConfig cfg = load_config(config_arg, csv_override);
    const fa::EncodedDataset ds = fa::load_dataset(cfg);

    std::vector<std::uint8_t> yhat;
    bool have_predictions = false;
    if (!predictions_path.empty()) {
        yhat = load_predictions(predictions_path, ds.n);
        have_predictions = true;
    } else if (!model_path.empty()) {
        const fa::ScorerPtr scorer = fa::load_scorer(model_path);
        fa::ThresholdedClassifier clf(scorer, threshold);
        yhat = fa::predict_all(clf, ds);
        have_predictions = true;
    }

    const fa::GroupedCounts counts =
        fa::count_groups(ds.y, ds.s, have_predictions ? &yhat : nullptr);

    const fa::CIEstimate data_ci = fa::di_confidence_interval(counts, level, fa::DITarget::Data);
    const fa::TestResult data_fair =
        fa::di_level_test(counts, beta, alpha, fa::TestDirection::FairnessEvidence);
    const fa::TestResult data_disc =
        fa::di_level_test(counts, beta, alpha, fa::TestDirection::DiscriminationEvidence);

    std::optional<fa::CIEstimate> clf_ci, tp_ci, tn_ci;
    std::optional<fa::TestResult> clf_fair, clf_disc;
    if (have_predictions) {
        clf_ci = fa::di_confidence_interval(counts, level, fa::DITarget::Classifier);
        clf_fair = fa::di_level_test(counts, beta, alpha, fa::TestDirection::FairnessEvidence,
                                     fa::DITarget::Classifier);
        clf_disc = fa::di_level_test(counts, beta, alpha,
                                     fa::TestDirection::DiscriminationEvidence,
                                     fa::DITarget::Classifier);
        tp_ci = fa::rate_ratio_confidence_interval(counts, fa::RateKind::TP, level);
        tn_ci = fa::rate_ratio_confidence_interval(counts, fa::RateKind::TN, level);
    }

    if (out.format == "json") {
        ordered_json j;
        j["schema_version"] = 1;
        j["command"] = "audit";
        j["dataset"] = {{"name", cfg.name}, {"n", ds.n}, {"notes", ds.notes},
                        {"sensitive", cfg.sensitive.column},
                        {"protected", cfg.sensitive.protected_value}};
        j["data"] = {{"di", fa::ci_to_json(data_ci)},
                     {"test_fairness", fa::test_to_json(data_fair)},
                     {"test_discrimination", fa::test_to_json(data_disc)}};
        if (have_predictions) {
            j["classifier"] = {{"di", fa::ci_to_json(*clf_ci)},
                               {"test_fairness", fa::test_to_json(*clf_fair)},
                               {"test_discrimination", fa::test_to_json(*clf_disc)},
                               {"tp_ratio", fa::ci_to_json(*tp_ci)},
                               {"tn_ratio", fa::ci_to_json(*tn_ci)}};
        } else {
            j["classifier"] = nullptr;
        }
        emit(out, j.dump(2));
    } else if (out.format == "csv") {
        std::ostringstream os;
        os << "metric,point,sigma,n,level,lower,upper\n";
        auto row = [&](const std::string& name, const fa::CIEstimate& ci) {
            os << name << "," << fa::detail::format_double(ci.point) << ","
               << fa::detail::format_double(ci.sigma) << "," << ci.n << "," << ci.level << ","
               << fa::detail::format_double(ci.lower) << ","
               << fa::detail::format_double(ci.upper) << "\n";
        };
        row("data_di", data_ci);
        if (have_predictions) {
            row("classifier_di", *clf_ci);
            row("tp_ratio", *tp_ci);
            row("tn_ratio", *tn_ci);
        }
        emit(out, os.str());
    } else {
        std::ostringstream os;
        os << "dataset: " << cfg.name << " (n=" << ds.n << ", sensitive=" << cfg.sensitive.column
           << ", protected=" << cfg.sensitive.protected_value << ")\n";
        for (const auto& note : ds.notes) os << "note: " << note << "\n";
        os << human_ci("data DI      ", data_ci) << "\n";
        os << human_test(data_fair) << "\n" << human_test(data_disc) << "\n";
        if (have_predictions) {
            os << human_ci("classifier DI", *clf_ci) << "\n";
            os << human_test(*clf_fair) << "\n" << human_test(*clf_disc) << "\n";
            os << human_ci("TP ratio     ", *tp_ci) << "\n";
            os << human_ci("TN ratio     ", *tn_ci) << "\n";
        }
        emit(out, os.str());
    }
    return 0;
}

// ---- bootstrap-compare --------------------------------------------------------

int cmd_bootstrap_compare(const std::string& config_arg, const std::string& csv_override,
                          std::size_t B, std::uint64_t seed, double level,
                          const OutputOptions& out) {
    const fa::DatasetConfig cfg = load_config(config_arg, csv_override);
    const fa::EncodedDataset ds = fa::load_dataset(cfg);

    const fa::GroupedCounts counts = fa::count_groups(ds.y, ds.s);
    const fa::CIEstimate theo = fa::di_confidence_interval(counts, level, fa::DITarget::Data);
    const fa::BootstrapResult boot =
        fa::bootstrap_ci(ds.y, ds.s, nullptr, fa::BootstrapStatistic::DI, B, level, seed);

    const double lower_diff = std::abs(theo.lower - boot.ci.lower);
    const double upper_diff = std::abs(theo.upper - boot.ci.upper);

    if (out.format == "json") {
        ordered_json j;
        j["schema_version"] = 1;
        j["command"] = "bootstrap-compare";
        j["dataset"] = {{"name", cfg.name}, {"n", ds.n}};
        j["B"] = B;
        j["seed"] = seed;
        j["theoretical"] = fa::ci_to_json(theo);
        j["bootstrap"] = fa::ci_to_json(boot.ci);
        j["bound_difference"] = {{"lower", lower_diff}, {"upper", upper_diff}};
        j["replicates"] = {{"total", boot.total_replicates},
                           {"undefined", boot.undefined_replicates}};
        emit(out, j.dump(2));
    } else if (out.format == "csv") {
        std::ostringstream os;
        os << "method,point,lower,upper,n,level\n";
        os << "delta," << fa::detail::format_double(theo.point) << ","
           << fa::detail::format_double(theo.lower) << ","
           << fa::detail::format_double(theo.upper) << "," << theo.n << "," << theo.level
           << "\n";
        os << "bootstrap-percentile," << fa::detail::format_double(boot.ci.point) << ","
           << fa::detail::format_double(boot.ci.lower) << ","
           << fa::detail::format_double(boot.ci.upper) << "," << boot.ci.n << ","
           << boot.ci.level << "\n";
        emit(out, os.str());
    } else {
        std::ostringstream os;
        os << "dataset: " << cfg.name << " (n=" << ds.n << ")\n";
        os << human_ci("theoretical DI", theo) << "\n";
        os << human_ci("bootstrap   DI", boot.ci) << " (" << boot.total_replicates
           << " replicates, " << boot.undefined_replicates << " undefined)\n";
        os << "bound differences: lower " << round4(lower_diff) << ", upper "
           << round4(upper_diff) << "\n";
        emit(out, os.str());
    }
    return 0;
}

// ---- train-eval / mitigate ----------------------------------------------------

fa::ExperimentConfig make_experiment(const fa::DatasetConfig& dataset, const std::string& model,
                                     fa::Strategy strategy, std::size_t folds,
                                     std::uint64_t seed, double target_di) {
    fa::ExperimentConfig cfg;
    cfg.label = dataset.name + "/" + model + "/" + fa::to_string(strategy);
    cfg.dataset = dataset;
    cfg.family = fa::model_family_from_string(model);
    cfg.strategy = strategy;
    cfg.folds = folds;
    cfg.seed = seed;
    cfg.target_di = target_di;
    return cfg;
}

void emit_report(const fa::ExperimentReport& report, const OutputOptions& out) {
    if (out.format == "json") {
        ordered_json j;
        j["schema_version"] = 1;
        j["experiments"] = ordered_json::array({fa::report_to_json(report)});
        emit(out, j.dump(2));
    } else if (out.format == "csv") {
        emit(out, fa::summary_to_csv({fa::summarize(report)}));
    } else {
        const fa::Summary sum = fa::summarize(report);
        std::ostringstream os;
        os << sum.label << " (folds=" << sum.folds << ", n=" << report.n_rows << ")\n";
        if (report.ref_full)
            os << human_ci("data DI (Ref) ", *report.ref_full) << "\n";
        for (const auto& series : sum.series) {
            if (!series.mean) continue;
            os << "  " << series.metric << ": mean " << round4(*series.mean);
            if (series.spread)
                os << "  [min " << round4(series.spread->min) << ", median "
                   << round4(series.spread->median) << ", max " << round4(series.spread->max)
                   << "]";
            os << "\n";
        }
        emit(out, os.str());
    }
}

int cmd_train_eval(const std::string& config_arg, const std::string& csv_override,
                   const std::string& model, std::size_t folds, std::uint64_t seed,
                   const std::string& model_out, const OutputOptions& out) {
    const fa::DatasetConfig cfg = load_config(config_arg, csv_override);
    if (folds >= 2) {
        fa::ExperimentConfig exp =
            make_experiment(cfg, model, fa::Strategy::None, folds, seed, 0.8);
        const fa::ExperimentReport report = fa::run_cross_validation(exp);
        emit_report(report, out);
    }
    if (!model_out.empty() || folds < 2) {
        const fa::EncodedDataset ds = fa::load_dataset(cfg);
        const fa::ScorerPtr scorer = fa::train_model(fa::model_family_from_string(model), ds,
                                                     fa::ModelParams{}, seed);
        if (!model_out.empty()) {
            fa::write_text_file(model_out, scorer->to_json().dump(2));
        }
        if (folds < 2) {
            fa::ThresholdedClassifier clf(scorer);
            const fa::EvalMetrics m = fa::evaluate(clf, ds);
            const fa::DIValue di = fa::disparate_impact_of_classifier(clf, ds);
            std::ostringstream os;
            os << "training metrics on the full dataset (no cross-validation):\n";
            os << "  accuracy " << round4(m.accuracy().value_or(0)) << "  tpr "
               << round4(m.tpr().value_or(0)) << "  tnr " << round4(m.tnr().value_or(0))
               << "  classifier DI " << round4(di.value) << "\n";
            emit(out, os.str());
        }
    }
    return 0;
}

int cmd_mitigate(const std::string& config_arg, const std::string& csv_override,
                 const std::string& model, const std::string& strategy, std::size_t folds,
                 std::uint64_t seed, double target_di, const std::string& model_out,
                 const OutputOptions& out) {
    const fa::DatasetConfig cfg = load_config(config_arg, csv_override);
    const fa::Strategy strat = fa::strategy_from_string(strategy);
    fa::ExperimentConfig exp = make_experiment(cfg, model, strat, folds, seed, target_di);
    const fa::ExperimentReport report = fa::run_cross_validation(exp);
    emit_report(report, out);

    if (!model_out.empty()) {
        // serialize the strategy classifier trained on the full dataset
        fa::EncodedDataset ds = fa::load_dataset(cfg);
        const fa::ModelFamily family = fa::model_family_from_string(model);
        std::shared_ptr<const fa::BinaryClassifier> clf;
        switch (strat) {
            case fa::Strategy::None:
            case fa::Strategy::DropSensitive: {
                if (strat == fa::Strategy::DropSensitive) ds = fa::drop_sensitive(ds);
                clf = std::make_shared<fa::ThresholdedClassifier>(
                    fa::train_model(family, ds, fa::ModelParams{}, seed));
                break;
            }
            case fa::Strategy::TestingCompliant: {
                fa::ThresholdedClassifier base(fa::train_model(family, ds, fa::ModelParams{},
                                                               seed));
                clf = fa::make_testing_compliant(base, ds.sensitive_feature_indices);
                break;
            }
            case fa::Strategy::Separate: {
                clf = fa::train_separate(ds, family, fa::ModelParams{}, seed);
                break;
            }
            case fa::Strategy::PositiveDiscrimination: {
                auto scorer = fa::train_model(family, ds, fa::ModelParams{}, seed);
                const fa::GroupThresholds th = fa::calibrate_thresholds(*scorer, ds, target_di);
                clf = std::make_shared<fa::GroupThresholdClassifier>(std::move(scorer), th);
                break;
            }
        }
        fa::write_text_file(model_out, clf->to_json().dump(2));
    }
    return 0;
}

// ---- experiment -----------------------------------------------------------------

fa::ExperimentConfig experiment_config_from_json(const nlohmann::json& j, std::uint64_t seed,
                                                 std::size_t index) {
    fa::ExperimentConfig cfg;
    try {
        const auto& dsj = j.at("dataset");
        if (dsj.is_string()) {
            cfg.dataset = fa::load_dataset_config(resolve_config_arg(dsj.get<std::string>()));
        } else {
            cfg.dataset = fa::parse_dataset_config(dsj, "inline");
        }
        cfg.family = fa::model_family_from_string(j.at("model").get<std::string>());
        cfg.strategy = fa::strategy_from_string(j.value("strategy", std::string("none")));
        cfg.folds = j.value("folds", std::size_t{10});
        cfg.target_di = j.value("target_di", 0.8);
        cfg.ci_level = j.value("ci_level", 0.95);
        cfg.label = j.value("label", cfg.dataset.name + "/" + fa::to_string(cfg.family) + "/" +
                                         fa::to_string(cfg.strategy));
        cfg.seed = j.contains("seed") ? j.at("seed").get<std::uint64_t>()
                                      : fa::derive_seed(seed, fa::fnv1a(cfg.label));
        if (j.contains("balance")) {
            const auto& b = j.at("balance");
            cfg.balance.equalize_majority_to_minority = b.value("equalize", false);
            if (b.contains("sizes"))
                for (auto it = b.at("sizes").begin(); it != b.at("sizes").end(); ++it)
                    cfg.balance.explicit_sizes[std::stoi(it.key())] =
                        it.value().get<std::size_t>();
        }
    } catch (const nlohmann::json::exception& e) {
        throw fa::ConfigError("experiment config #" + std::to_string(index) + ": " + e.what());
    }
    return cfg;
}

int cmd_experiment(const std::string& preset_or_file, const std::string& out_dir,
                   std::uint64_t seed, std::size_t folds, std::size_t threads,
                   const std::string& csv_override) {
    std::vector<fa::ExperimentConfig> configs;
    const bool is_preset =
        std::find(fa::preset_names().begin(), fa::preset_names().end(), preset_or_file) !=
        fa::preset_names().end();
    if (is_preset) {
        configs = fa::experiment_preset(preset_or_file, seed, folds);
    } else if (fs::exists(preset_or_file)) {
        std::ifstream in(preset_or_file);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw fa::ConfigError("experiment file is not valid JSON: " + std::string(e.what()));
        }
        if (!j.is_array()) throw fa::ConfigError("experiment file must hold a JSON array");
        std::size_t idx = 0;
        for (const auto& item : j) configs.push_back(experiment_config_from_json(item, seed, idx++));
    } else {
        std::ostringstream os;
        os << "unknown preset or missing file '" << preset_or_file << "'; valid presets:";
        for (const auto& p : fa::preset_names()) os << " " << p;
        throw fa::ConfigError(os.str());
    }
    if (!csv_override.empty())
        for (auto& cfg : configs) cfg.dataset.csv_path = csv_override;

    const std::vector<fa::SuiteEntry> entries = fa::run_suite(configs, threads);

    fs::create_directories(out_dir);
    fa::write_text_file((fs::path(out_dir) / "report.json").string(),
                        fa::suite_to_json(entries).dump(2));
    std::vector<fa::Summary> summaries;
    for (const auto& e : entries)
        if (e.report) summaries.push_back(fa::summarize(*e.report));
    fa::write_text_file((fs::path(out_dir) / "report.csv").string(),
                        fa::summary_to_csv(summaries));

    bool any_error = false;
    for (const auto& e : entries) {
        if (!e.error.empty()) {
            std::cerr << "experiment '" << e.label << "' failed: " << e.error << "\n";
            any_error = true;
        } else {
            std::cout << "experiment '" << e.label << "' done\n";
        }
    }
    std::cout << "wrote " << (fs::path(out_dir) / "report.json").string() << " and "
              << (fs::path(out_dir) / "report.csv").string() << "\n";
    return any_error ? 2 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"fairness auditing and bias mitigation toolkit"};
    app.require_subcommand(1);

    OutputOptions out;
    std::string config_arg, csv_override, predictions_path, model_path, model_out;
    std::string model = "lr", strategy = "none", preset_or_file, out_dir = "experiment-out";
    double level = 0.95, beta = 0.8, alpha = 0.05, target_di = 0.8, threshold = 0.5;
    std::size_t B = 1000, folds = 10, threads = 0;
    std::uint64_t seed = 0;

    auto add_output = [&](CLI::App* cmd) {
        cmd->add_option("--format", out.format, "output format")
            ->check(CLI::IsMember({"human", "json", "csv"}));
        cmd->add_option("--out", out.out_path, "output file (default stdout)");
    };
    auto add_config = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_arg,
                        "dataset config: built-in name (adult, adult-ethnic), file path, or "
                        "name under $FAIRAUDIT_CONFIG_DIR")
            ->required();
        cmd->add_option("--csv", csv_override, "override the config's CSV path");
    };

    CLI::App* audit = app.add_subcommand("audit", "measure DI and rate ratios with CIs");
    add_config(audit);
    audit->add_option("--predictions", predictions_path,
                      "row-aligned single-column CSV of 0/1 predictions");
    audit->add_option("--model", model_path, "serialized model JSON to score the dataset");
    audit->add_option("--threshold", threshold, "decision threshold for --model");
    audit->add_option("--level", level, "confidence level");
    audit->add_option("--beta", beta, "DI level to test");
    audit->add_option("--alpha", alpha, "test significance");
    add_output(audit);

    CLI::App* boot = app.add_subcommand("bootstrap-compare",
                                        "theoretical vs bootstrap DI interval");
    add_config(boot);
    boot->add_option("--B", B, "bootstrap replicates");
    boot->add_option("--seed", seed, "random seed")->required();
    boot->add_option("--level", level, "confidence level");
    add_output(boot);

    CLI::App* train = app.add_subcommand("train-eval", "train a baseline model and evaluate");
    add_config(train);
    train->add_option("--model", model, "model family: lr|dt|gb");
    train->add_option("--folds", folds, "folds (0 = train on the full dataset)");
    train->add_option("--seed", seed, "random seed")->required();
    train->add_option("--model-out", model_out, "write the trained model JSON here");
    add_output(train);

    CLI::App* mit = app.add_subcommand("mitigate", "run a mitigation strategy under CV");
    add_config(mit);
    mit->add_option("--model", model, "model family: lr|dt|gb");
    mit->add_option("--strategy", strategy,
                    "none|drop-sensitive|testing-compliant|separate|positive-discrimination")
        ->required();
    mit->add_option("--folds", folds, "folds");
    mit->add_option("--seed", seed, "random seed")->required();
    mit->add_option("--target-di", target_di, "calibration target for positive discrimination");
    mit->add_option("--model-out", model_out, "serialize the full-data strategy classifier");
    add_output(mit);

    CLI::App* exp = app.add_subcommand("experiment", "run a preset or config-file suite");
    exp->add_option("preset", preset_or_file, "preset name (fig3..fig8) or config JSON file")
        ->required();
    exp->add_option("--out-dir", out_dir, "output directory");
    exp->add_option("--seed", seed, "master seed")->required();
    exp->add_option("--folds", folds, "folds per experiment");
    exp->add_option("--threads", threads, "fold-level parallelism (0 = auto)");
    exp->add_option("--csv", csv_override, "override every config's CSV path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(audit))
            return cmd_audit(config_arg, csv_override, predictions_path, model_path, level,
                             beta, alpha, threshold, out);
        if (app.got_subcommand(boot))
            return cmd_bootstrap_compare(config_arg, csv_override, B, seed, level, out);
        if (app.got_subcommand(train))
            return cmd_train_eval(config_arg, csv_override, model, folds, seed, model_out, out);
        if (app.got_subcommand(mit))
            return cmd_mitigate(config_arg, csv_override, model, strategy, folds, seed,
                                target_di, model_out, out);
        if (app.got_subcommand(exp))
            return cmd_experiment(preset_or_file, out_dir, seed, folds, threads, csv_override);
    } catch (const fa::DegenerateTrainingError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const fa::UndefinedMetricError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const fa::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
