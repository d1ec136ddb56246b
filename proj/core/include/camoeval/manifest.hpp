#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "camoeval/baselines.hpp"
#include "camoeval/camouflage.hpp"
#include "camoeval/context_measure.hpp"

namespace camoeval {

/// One evaluation unit referencing files on disk. `human_rank` is present
/// exactly when the record feeds the human-ranking protocol, and its length
/// must equal the number of prediction maps.
struct ManifestRecord {
    std::string id;
    std::optional<std::string> image_path;
    std::string gt_path;
    std::vector<std::string> fm_paths;
    std::optional<std::vector<int>> human_rank;
};

/// JSON-lines manifest: one record object per line, e.g.
///   {"id":"cod-1","image":"img/1.jpg","gt":"gt/1.png","fms":["a.png","b.png","c.png"],"human_rank":[2,1,3]}
/// Relative paths resolve against the manifest's directory; all paths are
/// checked for existence at load time.
struct Manifest {
    std::vector<ManifestRecord> records;

    static Manifest load(const std::string& path);
    static Manifest parse(std::istream& in, const std::string& base_dir);
};

enum class ReportFormat { Csv, Json };

/// Batch-run configuration. Defaults are the experimental setup the measures
/// ship with: alpha=6, beta=1.0 (generic) / 1.2 (camouflaged), gamma=8,
/// lambda=20, band k=20, patch 7 with overlap 3.
struct RunConfig {
    std::vector<std::string> metrics;  // empty = the default set per command
    CmParams cm{6.0, 1.0};
    double camo_beta = kCamoBeta;
    CamoParams camo{};
    BaselineParams baselines{};
    std::uint64_t seed = 0;
    ReportFormat format = ReportFormat::Csv;
    unsigned threads = 1;
    bool noise_requires_low_prediction = false;
};

}  // namespace camoeval
