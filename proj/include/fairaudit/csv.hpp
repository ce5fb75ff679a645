#pragma once

// Minimal CSV reader: configurable delimiter, optional header, double-quoted
// fields with "" escapes, whitespace trimmed around unquoted cells (the UCI
// Adult file uses ", " separators). Space-delimited files (german.data)
// collapse runs of the delimiter.

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "errors.hpp"

namespace fairaudit {

struct CsvOptions {
    char delimiter = ',';
    bool has_header = true;
    // With a space delimiter, consecutive separators count as one.
    bool collapse_delimiters() const { return delimiter == ' '; }
};

struct CsvFile {
    std::vector<std::string> header;            // empty when has_header == false
    std::vector<std::vector<std::string>> rows; // trimmed cell values
};

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return s.substr(b, e - b);
}

inline std::vector<std::string> split_csv_line(const std::string& line, const CsvOptions& opt,
                                               long line_no) {
    std::vector<std::string> out;
    std::string cell;
    bool in_quotes = false;
    bool cell_was_quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char ch = line[i];
        if (in_quotes) {
            if (ch == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cell.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cell.push_back(ch);
            }
        } else if (ch == '"' && cell.empty() && !cell_was_quoted) {
            in_quotes = true;
            cell_was_quoted = true;
        } else if (ch == opt.delimiter) {
            if (opt.collapse_delimiters() && cell.empty() && !cell_was_quoted) continue;
            out.push_back(cell_was_quoted ? cell : trim(cell));
            cell.clear();
            cell_was_quoted = false;
        } else {
            cell.push_back(ch);
        }
    }
    if (in_quotes) throw ParseError("unterminated quoted field", line_no);
    if (!(opt.collapse_delimiters() && cell.empty() && !cell_was_quoted && !out.empty())) {
        out.push_back(cell_was_quoted ? cell : trim(cell));
    } else if (opt.collapse_delimiters()) {
        // trailing separators on a space-delimited line produce no empty cell
    }
    return out;
}

} // namespace detail

inline CsvFile read_csv(const std::string& path, const CsvOptions& opt = {}) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);

    CsvFile file;
    std::string line;
    long line_no = 0;
    std::size_t expected_arity = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        auto cells = detail::split_csv_line(line, opt, line_no);
        if (line_no == 1 && opt.has_header) {
            file.header = std::move(cells);
            expected_arity = file.header.size();
            continue;
        }
        if (expected_arity == 0) {
            expected_arity = cells.size();
        } else if (cells.size() != expected_arity) {
            throw ParseError("row has " + std::to_string(cells.size()) + " fields, expected " +
                                 std::to_string(expected_arity),
                             line_no);
        }
        file.rows.push_back(std::move(cells));
    }
    if (opt.has_header && file.header.empty()) {
        throw ParseError("missing header row in " + path, 1);
    }
    return file;
}

} // namespace fairaudit
