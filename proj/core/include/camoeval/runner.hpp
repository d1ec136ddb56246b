#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "camoeval/manifest.hpp"
#include "camoeval/metastudy.hpp"
#include "camoeval/report.hpp"

namespace camoeval {

/// Builds the metric set named in the config (all metrics when unset).
/// With `for_meta` the dissimilarity metric (mae) is rejected since the meta
/// protocols assume higher-is-better scores.
std::vector<Metric> build_metrics(const RunConfig& config, bool for_meta);

/// Scores every (record, prediction, metric) triple and writes the report.
/// Per-record failures land in the report's error column; the return value is
/// the number of failed rows (nonzero exit for CI).
int cmd_eval(const Manifest& manifest, const RunConfig& config, std::ostream& out);

/// Camouflage-degree maps for every record: <id>_camo.png (16-bit grayscale,
/// value = round(D*65535)) and <id>_camo_preview.png (colormapped) under
/// out_dir. Returns the number of failed records; failures are logged.
int cmd_camo_map(const Manifest& manifest, const RunConfig& config, const std::string& out_dir,
                 std::ostream& log);

Protocol parse_protocol(const std::string& name);

/// Runs one meta-measure protocol for every configured metric and writes the
/// report table (one row per metric).
std::vector<MetaResult> cmd_meta(const Manifest& manifest, const RunConfig& config,
                                 Protocol protocol, std::ostream& out);

/// Embedded oracle fixtures (color-difference verification pairs, convolution
/// vs. the direct double sum, the approximate vs. exact reverse field, degree
/// mapping endpoints). Prints one line per suite; true iff all pass.
bool cmd_selftest(std::ostream& out);

}  // namespace camoeval
