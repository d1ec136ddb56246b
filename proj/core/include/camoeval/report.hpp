#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "camoeval/metastudy.hpp"

namespace camoeval {

/// One evaluation result: a metric score for one prediction of one record.
/// `error` is non-empty when the score could not be produced.
struct EvalRow {
    std::string id;
    int fm_index = 0;
    std::string metric;
    std::optional<double> score;
    std::string error;
};

/// Shortest round-trip decimal rendering of a double (parses back exactly).
std::string format_double(double v);

/// Percentage with two decimals, half-up, mirroring the benchmark-table
/// convention: exact zero prints "0.00%", positive values at or below 0.01%
/// print "<=0.01%".
std::string format_percent(double fraction);

void write_eval_csv(std::span<const EvalRow> rows, std::ostream& out);
void write_eval_json(std::span<const EvalRow> rows, std::ostream& out);

void write_meta_csv(std::span<const MetaResult> results, std::ostream& out);
void write_meta_json(std::span<const MetaResult> results, std::ostream& out);

}  // namespace camoeval
