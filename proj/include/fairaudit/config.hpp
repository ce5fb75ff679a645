#pragma once

// Dataset configuration: a JSON document declaring the CSV location and
// format, column kinds, missing markers, label and sensitive selections, and
// an optional preprocess transform list. The Adult recipe ships as a named
// built-in config ("adult", "adult-ethnic"); file-based configs resolve
// relative CSV paths against the config file's directory, or against
// $FAIRAUDIT_DATA_DIR when set.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "dataset.hpp"
#include "preprocess.hpp"
#include "table.hpp"

namespace fairaudit {

struct DatasetConfig {
    std::string name;
    std::string csv_path;
    CsvOptions csv;
    TableSchema schema;
    PreprocessSpec preprocess;
    LabelSelector label;
    SensitiveSelector sensitive;
};

namespace detail {

inline ColumnKind parse_kind(const std::string& k, const std::string& col) {
    if (k == "categorical") return ColumnKind::Categorical;
    if (k == "continuous") return ColumnKind::Continuous;
    throw ConfigError("column '" + col + "': unknown kind '" + k +
                      "' (expected categorical|continuous)");
}

inline std::set<std::string> string_set(const nlohmann::json& j, const std::string& key) {
    std::set<std::string> out;
    for (const auto& v : j.at(key)) out.insert(v.get<std::string>());
    return out;
}

inline std::map<std::string, std::string> string_map(const nlohmann::json& j) {
    std::map<std::string, std::string> out;
    for (auto it = j.begin(); it != j.end(); ++it) out[it.key()] = it.value().get<std::string>();
    return out;
}

inline Transform parse_transform(const nlohmann::json& j, std::size_t idx) {
    const std::string op = j.at("op").get<std::string>();
    if (op == "drop_column") return DropColumn{j.at("column").get<std::string>()};
    if (op == "drop_rows_with_missing") return DropRowsWithMissing{};
    if (op == "merge_categories")
        return MergeCategories{j.at("column").get<std::string>(), string_map(j.at("mapping"))};
    if (op == "binarize") {
        Binarize b;
        b.column = j.at("column").get<std::string>();
        b.positive_values = string_set(j, "positive_values");
        b.new_name = j.value("new_name", b.column);
        b.positive_label = j.value("positive_label", std::string("Yes"));
        b.negative_label = j.value("negative_label", std::string("No"));
        return b;
    }
    if (op == "derive_binary") {
        DeriveBinary d;
        d.new_name = j.at("new_name").get<std::string>();
        d.source_column = j.at("source_column").get<std::string>();
        d.values = string_set(j, "values");
        d.positive_label = j.value("positive_label", std::string("Yes"));
        d.negative_label = j.value("negative_label", std::string("No"));
        return d;
    }
    if (op == "normalize_label")
        return NormalizeLabel{j.at("column").get<std::string>(), string_map(j.at("mapping"))};
    throw ConfigError("transform " + std::to_string(idx) + ": unknown op '" + op + "'");
}

} // namespace detail

inline DatasetConfig parse_dataset_config(const nlohmann::json& j, const std::string& name) {
    DatasetConfig cfg;
    cfg.name = name;
    try {
        cfg.csv_path = j.at("csv").get<std::string>();
        if (j.contains("delimiter")) {
            const std::string d = j.at("delimiter").get<std::string>();
            if (d.size() != 1) throw ConfigError("delimiter must be a single character");
            cfg.csv.delimiter = d[0];
        }
        cfg.csv.has_header = j.value("has_header", true);
        cfg.schema.drop_undeclared = j.value("drop_undeclared", false);
        if (j.contains("missing_markers"))
            cfg.schema.missing_markers = detail::string_set(j, "missing_markers");

        if (!j.contains("columns")) throw ConfigError("missing 'columns'");
        for (const auto& c : j.at("columns")) {
            const std::string cname = c.at("name").get<std::string>();
            cfg.schema.ordered_names.push_back(cname);
            cfg.schema.kinds[cname] = detail::parse_kind(c.at("kind").get<std::string>(), cname);
        }

        if (j.contains("preprocess")) {
            std::size_t idx = 0;
            for (const auto& t : j.at("preprocess"))
                cfg.preprocess.transforms.push_back(detail::parse_transform(t, idx++));
        }

        cfg.label.column = j.at("label").at("column").get<std::string>();
        cfg.label.positive_value = j.at("label").at("positive").get<std::string>();
        cfg.sensitive.column = j.at("sensitive").at("column").get<std::string>();
        cfg.sensitive.protected_value = j.at("sensitive").at("protected").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("dataset config '" + name + "': " + e.what());
    }
    return cfg;
}

// Built-in Adult configs. The CSV is expected at data/adult.csv (comma
// separated, with header) unless overridden.
inline DatasetConfig adult_config(const std::string& sensitive_attribute = "gender") {
    DatasetConfig cfg;
    cfg.name = sensitive_attribute == "gender" ? "adult" : "adult-ethnic";
    cfg.csv_path = "data/adult.csv";
    static const std::vector<std::pair<const char*, ColumnKind>> cols = {
        {"Age", ColumnKind::Continuous},        {"workClass", ColumnKind::Categorical},
        {"fnlwgt", ColumnKind::Continuous},     {"education", ColumnKind::Categorical},
        {"educNum", ColumnKind::Continuous},    {"mariStat", ColumnKind::Categorical},
        {"occup", ColumnKind::Categorical},     {"relationship", ColumnKind::Categorical},
        {"origEthn", ColumnKind::Categorical},  {"gender", ColumnKind::Categorical},
        {"capitalGain", ColumnKind::Continuous},{"capitalLoss", ColumnKind::Continuous},
        {"hoursWeek", ColumnKind::Continuous},  {"nativCountry", ColumnKind::Categorical},
        {"income", ColumnKind::Categorical}};
    for (const auto& [n, k] : cols) {
        cfg.schema.ordered_names.emplace_back(n);
        cfg.schema.kinds[n] = k;
    }
    cfg.preprocess = adult_recipe();
    cfg.label = {"income", ">50K"};
    if (sensitive_attribute == "gender") {
        cfg.sensitive = {"gender", "Female"};
    } else if (sensitive_attribute == "ethnic" || sensitive_attribute == "origEthn") {
        cfg.sensitive = {"origEthn", "CaucNo"};
    } else {
        throw ConfigError("adult config: unknown sensitive attribute '" + sensitive_attribute +
                          "' (expected gender|ethnic)");
    }
    return cfg;
}

inline bool is_builtin_config(const std::string& name) {
    return name == "adult" || name == "adult-gender" || name == "adult-ethnic";
}

inline DatasetConfig builtin_config(const std::string& name) {
    if (name == "adult" || name == "adult-gender") return adult_config("gender");
    if (name == "adult-ethnic") return adult_config("ethnic");
    throw ConfigError("unknown built-in config '" + name + "'");
}

// Load a config by built-in name or file path. Relative csv paths resolve
// against (in order) the config file's directory and $FAIRAUDIT_DATA_DIR.
inline DatasetConfig load_dataset_config(const std::string& name_or_path) {
    namespace fs = std::filesystem;
    DatasetConfig cfg;
    fs::path base;
    if (is_builtin_config(name_or_path)) {
        cfg = builtin_config(name_or_path);
        base = fs::current_path();
    } else {
        std::ifstream in(name_or_path);
        if (!in) throw IoError("cannot open dataset config: " + name_or_path);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError("dataset config '" + name_or_path + "' is not valid JSON: " +
                              e.what());
        }
        cfg = parse_dataset_config(j, name_or_path);
        base = fs::absolute(fs::path(name_or_path)).parent_path();
    }
    fs::path csv(cfg.csv_path);
    if (csv.is_relative()) {
        if (const char* env = std::getenv("FAIRAUDIT_DATA_DIR"); env && *env) {
            const fs::path candidate = fs::path(env) / csv.filename();
            if (fs::exists(candidate)) {
                cfg.csv_path = candidate.string();
                return cfg;
            }
        }
        if (fs::exists(base / csv)) {
            cfg.csv_path = (base / csv).string();
        }
        // else: leave as-is, relative to the working directory
    }
    return cfg;
}

// Full ingestion pipeline: load, preprocess, encode.
inline EncodedDataset load_dataset(const DatasetConfig& cfg) {
    RawTable table = load_csv(cfg.csv_path, cfg.schema, cfg.csv);
    table = apply_preprocess(std::move(table), cfg.preprocess);
    return encode(table, cfg.label, cfg.sensitive);
}

} // namespace fairaudit
