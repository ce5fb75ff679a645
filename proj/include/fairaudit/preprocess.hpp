#pragma once

// Declarative preprocessing: an ordered list of transforms applied to a
// RawTable. Applying a spec is deterministic; a transform that references a
// column absent at its point in the sequence raises TransformError with the
// transform index.

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "table.hpp"

namespace fairaudit {

struct DropColumn {
    std::string column;
};

struct DropRowsWithMissing {};

struct MergeCategories {
    std::string column;
    std::map<std::string, std::string> mapping; // old value -> new value
};

// Replace a categorical column by a two-category one: positive_label where
// the old value is in positive_values, negative_label otherwise.
struct Binarize {
    std::string column;
    std::set<std::string> positive_values;
    std::string new_name;
    std::string positive_label = "Yes";
    std::string negative_label = "No";
};

// Append a new two-category column derived from another column's membership
// in a value set. The source column is left in place.
struct DeriveBinary {
    std::string new_name;
    std::string source_column;
    std::set<std::string> values; // predicate: source value in this set
    std::string positive_label = "Yes";
    std::string negative_label = "No";
};

struct NormalizeLabel {
    std::string column;
    std::map<std::string, std::string> mapping; // raw spelling -> normalized
};

using Transform = std::variant<DropColumn, DropRowsWithMissing, MergeCategories, Binarize,
                               DeriveBinary, NormalizeLabel>;

struct PreprocessSpec {
    std::vector<Transform> transforms;
};

namespace detail {

inline std::size_t require_column(const RawTable& t, const std::string& name, std::size_t idx,
                                  const char* what) {
    if (!t.has_column(name))
        throw TransformError(std::string(what) + " references absent column '" + name + "'", idx);
    return t.column_index(name);
}

} // namespace detail

inline RawTable apply_preprocess(RawTable table, const PreprocessSpec& spec) {
    for (std::size_t idx = 0; idx < spec.transforms.size(); ++idx) {
        const Transform& t = spec.transforms[idx];

        if (const auto* op = std::get_if<DropColumn>(&t)) {
            table.drop_column(detail::require_column(table, op->column, idx, "drop_column"));

        } else if (std::get_if<DropRowsWithMissing>(&t)) {
            std::vector<bool> keep(table.n_rows(), true);
            for (std::size_t i = 0; i < table.n_rows(); ++i)
                for (std::size_t j = 0; j < table.n_cols(); ++j)
                    if (!table.at(i, j)) { keep[i] = false; break; }
            table.keep_rows(keep);

        } else if (const auto* op = std::get_if<MergeCategories>(&t)) {
            const std::size_t j =
                detail::require_column(table, op->column, idx, "merge_categories");
            if (table.column(j).kind != ColumnKind::Categorical)
                throw TransformError("merge_categories on non-categorical column '" + op->column +
                                         "'", idx);
            for (std::size_t i = 0; i < table.n_rows(); ++i) {
                Cell& c = table.at(i, j);
                if (!c) continue;
                auto it = op->mapping.find(*c);
                if (it != op->mapping.end()) c = it->second;
            }

        } else if (const auto* op = std::get_if<Binarize>(&t)) {
            const std::size_t j = detail::require_column(table, op->column, idx, "binarize");
            if (table.column(j).kind != ColumnKind::Categorical)
                throw TransformError("binarize on non-categorical column '" + op->column + "'",
                                     idx);
            if (op->new_name != op->column && table.has_column(op->new_name))
                throw TransformError("binarize target name '" + op->new_name +
                                         "' already exists", idx);
            std::vector<Cell> values(table.n_rows());
            for (std::size_t i = 0; i < table.n_rows(); ++i) {
                const Cell& c = table.at(i, j);
                if (!c) continue; // missing stays missing
                values[i] = op->positive_values.count(*c) ? op->positive_label
                                                          : op->negative_label;
            }
            for (std::size_t i = 0; i < table.n_rows(); ++i)
                table.at(i, j) = std::move(values[i]);
            table.rename_column(j, op->new_name); // position preserved

        } else if (const auto* op = std::get_if<DeriveBinary>(&t)) {
            const std::size_t j =
                detail::require_column(table, op->source_column, idx, "derive_binary");
            if (table.has_column(op->new_name))
                throw TransformError("derive_binary target '" + op->new_name +
                                         "' already exists", idx);
            std::vector<Cell> values(table.n_rows());
            for (std::size_t i = 0; i < table.n_rows(); ++i) {
                const Cell& c = table.at(i, j);
                if (!c) continue;
                values[i] = op->values.count(*c) ? op->positive_label : op->negative_label;
            }
            table.append_column({op->new_name, ColumnKind::Categorical}, std::move(values));

        } else if (const auto* op = std::get_if<NormalizeLabel>(&t)) {
            const std::size_t j =
                detail::require_column(table, op->column, idx, "normalize_label");
            for (std::size_t i = 0; i < table.n_rows(); ++i) {
                Cell& c = table.at(i, j);
                if (!c) continue;
                auto it = op->mapping.find(*c);
                if (it != op->mapping.end()) c = it->second;
            }
        }
    }
    return table;
}

// The fixed Adult Income cleanup recipe. The `child` indicator is derived from
// relationship before that column is dropped; the missing-row sweep runs while
// all raw columns are still present, so missingness anywhere drops the row.
// The set defining `child` is a recipe constant; override it in a config file
// to change the definition.
inline const std::set<std::string>& adult_child_values() {
    static const std::set<std::string> v = {"Own-child"};
    return v;
}

inline PreprocessSpec adult_recipe() {
    PreprocessSpec spec;
    spec.transforms.push_back(
        DeriveBinary{"child", "relationship", adult_child_values(), "Yes", "No"});
    spec.transforms.push_back(DropRowsWithMissing{});
    spec.transforms.push_back(DropColumn{"fnlwgt"});
    spec.transforms.push_back(DropColumn{"relationship"});
    spec.transforms.push_back(DropColumn{"nativCountry"});
    spec.transforms.push_back(DropColumn{"education"});
    spec.transforms.push_back(
        Binarize{"origEthn", {"White"}, "origEthn", "CaucYes", "CaucNo"});
    spec.transforms.push_back(NormalizeLabel{
        "income",
        {{"<50K", "<=50K"}, {"<=50K.", "<=50K"}, {">50K.", ">50K"}, {">=50K", ">50K"}}});
    return spec;
}

} // namespace fairaudit
