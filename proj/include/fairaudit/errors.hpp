#pragma once

// Typed error hierarchy. Every failure mode an audit can hit maps to one of
// these; the CLI turns them into stable exit codes (see tools/fairaudit.cpp).
// Undefined metrics are errors, never NaN or 0 -- an audit must not silently
// fabricate a fairness value.

#include <stdexcept>
#include <string>

namespace fairaudit {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad file paths, unreadable files, I/O failures.
struct IoError : Error {
    explicit IoError(const std::string& msg) : Error(msg) {}
};

// Malformed input data (wrong arity rows, unparsable numbers). Carries the
// 1-based line number when known.
struct ParseError : Error {
    ParseError(const std::string& msg, long line = -1)
        : Error(line >= 0 ? msg + " (line " + std::to_string(line) + ")" : msg),
          line_number(line) {}
    long line_number;
};

// Invalid configuration: unknown columns in a schema, missing config keys,
// contradictory settings.
struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

// A preprocessing transform that references state not present when it runs.
// Names the offending transform index.
struct TransformError : Error {
    TransformError(const std::string& msg, std::size_t index)
        : Error("transform " + std::to_string(index) + ": " + msg),
          transform_index(index) {}
    std::size_t transform_index;
};

// Invalid argument values (k out of range, negative counts, ...).
struct ArgumentError : Error {
    explicit ArgumentError(const std::string& msg) : Error(msg) {}
};

// A metric whose defining ratio has an empty conditioning cell or a zero
// denominator. Names the empty cell.
struct UndefinedMetricError : Error {
    explicit UndefinedMetricError(const std::string& msg) : Error(msg) {}
};

// A zero plug-in probability makes the asymptotic variance degenerate.
struct DegenerateVarianceError : UndefinedMetricError {
    explicit DegenerateVarianceError(const std::string& msg) : UndefinedMetricError(msg) {}
};

// Too many bootstrap replicates had an undefined statistic.
struct InstabilityError : UndefinedMetricError {
    InstabilityError(const std::string& msg, std::size_t undefined, std::size_t total)
        : UndefinedMetricError(msg + " (" + std::to_string(undefined) + "/" +
                               std::to_string(total) + " replicates undefined)"),
          undefined_replicates(undefined), total_replicates(total) {}
    std::size_t undefined_replicates;
    std::size_t total_replicates;
};

// Training cannot proceed: single-class labels, empty dataset, degenerate group.
struct DegenerateTrainingError : Error {
    explicit DegenerateTrainingError(const std::string& msg) : Error(msg) {}
};

} // namespace fairaudit
