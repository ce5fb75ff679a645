#pragma once

// RawTable: a typed, columnar view of loaded tabular data. Cells are strings;
// missing values are explicit (never sentinel strings once loaded). Column
// names are unique and every row has exactly one value per column.

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "csv.hpp"
#include "errors.hpp"

namespace fairaudit {

enum class ColumnKind { Categorical, Continuous };

inline const char* to_string(ColumnKind k) {
    return k == ColumnKind::Categorical ? "categorical" : "continuous";
}

struct ColumnSpec {
    std::string name;
    ColumnKind kind = ColumnKind::Categorical;
};

using Cell = std::optional<std::string>; // nullopt == missing

class RawTable {
public:
    RawTable() = default;
    RawTable(std::vector<ColumnSpec> columns, std::vector<std::vector<Cell>> rows)
        : columns_(std::move(columns)), rows_(std::move(rows)) {
        std::set<std::string> names;
        for (const auto& c : columns_) {
            if (!names.insert(c.name).second)
                throw ConfigError("duplicate column name: " + c.name);
        }
        for (const auto& r : rows_) {
            if (r.size() != columns_.size())
                throw ArgumentError("row arity does not match column count");
        }
    }

    std::size_t n_rows() const { return rows_.size(); }
    std::size_t n_cols() const { return columns_.size(); }
    const std::vector<ColumnSpec>& columns() const { return columns_; }

    bool has_column(const std::string& name) const { return find(name) >= 0; }

    std::size_t column_index(const std::string& name) const {
        const int i = find(name);
        if (i < 0) throw ArgumentError("no such column: " + name);
        return static_cast<std::size_t>(i);
    }

    const ColumnSpec& column(std::size_t j) const { return columns_.at(j); }
    const Cell& at(std::size_t i, std::size_t j) const { return rows_[i][j]; }
    Cell& at(std::size_t i, std::size_t j) { return rows_[i][j]; }

    // Distinct non-missing values of a column, sorted.
    std::vector<std::string> distinct_values(std::size_t j) const {
        std::set<std::string> vals;
        for (const auto& r : rows_)
            if (r[j]) vals.insert(*r[j]);
        return {vals.begin(), vals.end()};
    }

    void rename_column(std::size_t j, const std::string& new_name) {
        if (columns_.at(j).name != new_name && has_column(new_name))
            throw ArgumentError("column already exists: " + new_name);
        columns_[j].name = new_name;
    }

    void drop_column(std::size_t j) {
        columns_.erase(columns_.begin() + static_cast<std::ptrdiff_t>(j));
        for (auto& r : rows_) r.erase(r.begin() + static_cast<std::ptrdiff_t>(j));
    }

    void append_column(ColumnSpec spec, std::vector<Cell> values) {
        if (values.size() != rows_.size())
            throw ArgumentError("append_column: value count does not match row count");
        if (has_column(spec.name)) throw ArgumentError("column already exists: " + spec.name);
        for (std::size_t i = 0; i < rows_.size(); ++i)
            rows_[i].push_back(std::move(values[i]));
        columns_.push_back(std::move(spec));
    }

    void keep_rows(const std::vector<bool>& keep) {
        if (keep.size() != rows_.size())
            throw ArgumentError("keep_rows: mask size does not match row count");
        std::vector<std::vector<Cell>> kept;
        kept.reserve(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            if (keep[i]) kept.push_back(std::move(rows_[i]));
        rows_ = std::move(kept);
    }

    bool operator==(const RawTable& other) const {
        if (columns_.size() != other.columns_.size() || rows_.size() != other.rows_.size())
            return false;
        for (std::size_t j = 0; j < columns_.size(); ++j)
            if (columns_[j].name != other.columns_[j].name ||
                columns_[j].kind != other.columns_[j].kind)
                return false;
        return rows_ == other.rows_;
    }

private:
    int find(const std::string& name) const {
        for (std::size_t j = 0; j < columns_.size(); ++j)
            if (columns_[j].name == name) return static_cast<int>(j);
        return -1;
    }

    std::vector<ColumnSpec> columns_;
    std::vector<std::vector<Cell>> rows_;
};

struct TableSchema {
    // Column name -> kind. Must cover every file column unless drop_undeclared.
    std::unordered_map<std::string, ColumnKind> kinds;
    std::vector<std::string> ordered_names; // declaration order; required when has_header=false
    std::set<std::string> missing_markers = {"?", ""};
    bool drop_undeclared = false;
};

// Load a CSV into a RawTable: header columns matched against the schema,
// missing markers replaced by explicit missing cells.
inline RawTable load_csv(const std::string& path, const TableSchema& schema,
                         const CsvOptions& csv_opt = {}) {
    CsvFile file = read_csv(path, csv_opt);

    std::vector<std::string> file_columns;
    if (csv_opt.has_header) {
        file_columns = file.header;
    } else {
        if (schema.ordered_names.empty())
            throw ConfigError("headerless CSV requires an ordered column list in the schema");
        file_columns = schema.ordered_names;
        if (!file.rows.empty() && file.rows.front().size() != file_columns.size())
            throw ParseError("row has " + std::to_string(file.rows.front().size()) +
                                 " fields but schema declares " +
                                 std::to_string(file_columns.size()),
                             1);
    }

    for (const auto& [name, kind] : schema.kinds) {
        (void)kind;
        bool found = false;
        for (const auto& fc : file_columns)
            if (fc == name) { found = true; break; }
        if (!found) throw ConfigError("schema names unknown column: " + name);
    }

    std::vector<ColumnSpec> columns;
    std::vector<std::size_t> keep_idx;
    for (std::size_t j = 0; j < file_columns.size(); ++j) {
        auto it = schema.kinds.find(file_columns[j]);
        if (it == schema.kinds.end()) {
            if (schema.drop_undeclared) continue;
            throw ConfigError("column '" + file_columns[j] +
                              "' in file is not declared in the schema");
        }
        columns.push_back({file_columns[j], it->second});
        keep_idx.push_back(j);
    }

    std::vector<std::vector<Cell>> rows;
    rows.reserve(file.rows.size());
    for (const auto& raw : file.rows) {
        std::vector<Cell> row;
        row.reserve(keep_idx.size());
        for (std::size_t j : keep_idx) {
            const std::string& v = raw[j];
            if (schema.missing_markers.count(v)) {
                row.emplace_back(std::nullopt);
            } else {
                row.emplace_back(v);
            }
        }
        rows.push_back(std::move(row));
    }
    return RawTable(std::move(columns), std::move(rows));
}

} // namespace fairaudit
