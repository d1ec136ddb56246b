#include "camoeval/runner.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <ostream>
#include <sstream>

#include "camoeval/baselines.hpp"
#include "camoeval/image_io.hpp"
#include "camoeval/selftest.hpp"
#include "parallel.hpp"

namespace camoeval {

namespace fs = std::filesystem;

namespace {

const std::vector<std::string>& metric_order() {
    static const std::vector<std::string> names{"mae",      "iou",      "fbeta", "fbetaw",
                                                "smeasure", "emeasure", "cbeta", "cbetaw"};
    return names;
}

Metric make_metric(const std::string& name, const RunConfig& cfg) {
    if (name == "mae")
        return {name, false, [](const ScoredView& v) { return mae(v.fm, v.gt); }};
    if (name == "iou")
        return {name, false,
                [](const ScoredView& v) { return iou(binarize_adaptive(v.fm), v.gt); }};
    if (name == "fbeta")
        return {name, false, [p = cfg.baselines](const ScoredView& v) {
                    return f_beta(binarize_adaptive(v.fm), v.gt, p.beta_sq_f);
                }};
    if (name == "fbetaw")
        return {name, false,
                [p = cfg.baselines](const ScoredView& v) { return f_beta_w(v.fm, v.gt, p); }};
    if (name == "smeasure")
        return {name, false, [p = cfg.baselines](const ScoredView& v) {
                    return s_measure(v.fm, v.gt, p.alpha_s, p);
                }};
    if (name == "emeasure")
        return {name, false,
                [](const ScoredView& v) { return e_measure(binarize_adaptive(v.fm), v.gt); }};
    if (name == "cbeta")
        return {name, false,
                [p = cfg.cm](const ScoredView& v) { return context_measure(v.fm, v.gt, p); }};
    if (name == "cbetaw")
        return {name, true, [camo = cfg.camo, p = CmParams{cfg.cm.alpha, cfg.camo_beta}](
                                const ScoredView& v) {
                    if (v.image == nullptr) throw MissingImage("cbetaw needs the RGB image");
                    const CamoMap d = quantify(*v.image, v.gt, camo);
                    return context_measure_camo(v.fm, v.gt, d, p);
                }};
    throw Error("unknown metric '" + name + "'");
}

}  // namespace

std::vector<Metric> build_metrics(const RunConfig& config, bool for_meta) {
    std::vector<std::string> names = config.metrics;
    if (names.empty()) {
        names = metric_order();
        if (for_meta)  // mae is a dissimilarity; the protocols assume higher = better
            names.erase(std::remove(names.begin(), names.end(), "mae"), names.end());
    } else {
        for (const auto& n : names)
            if (std::find(metric_order().begin(), metric_order().end(), n) ==
                metric_order().end())
                throw Error("unknown metric '" + n + "'");
        if (for_meta && std::find(names.begin(), names.end(), "mae") != names.end())
            throw Error("mae is a dissimilarity and cannot drive the meta protocols");
        // report in the fixed registry order regardless of request order
        std::vector<std::string> ordered;
        for (const auto& n : metric_order())
            if (std::find(names.begin(), names.end(), n) != names.end()) ordered.push_back(n);
        names = std::move(ordered);
    }
    std::vector<Metric> metrics;
    metrics.reserve(names.size());
    for (const auto& n : names) metrics.push_back(make_metric(n, config));
    return metrics;
}

int cmd_eval(const Manifest& manifest, const RunConfig& config, std::ostream& out) {
    const std::vector<Metric> metrics = build_metrics(config, /*for_meta=*/false);
    const bool wants_image =
        std::any_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.needs_image; });

    struct RecordRows {
        std::vector<EvalRow> rows;
    };
    std::vector<RecordRows> per_record(manifest.records.size());

    detail::parallel_for(manifest.records.size(), config.threads, [&](size_t ri) {
        const ManifestRecord& rec = manifest.records[ri];
        auto& rows = per_record[ri].rows;
        auto emit_all = [&](const std::string& error) {
            for (size_t fi = 0; fi < rec.fm_paths.size(); ++fi)
                for (const auto& m : metrics)
                    rows.push_back({rec.id, static_cast<int>(fi), m.name, std::nullopt, error});
        };

        BinaryMask gt(1, 1);
        std::optional<RgbImage> image;
        try {
            gt = load_binary(rec.gt_path);
            if (wants_image && rec.image_path) image = load_rgb(*rec.image_path);
        } catch (const Error& e) {
            emit_all(e.what());
            return;
        }

        for (size_t fi = 0; fi < rec.fm_paths.size(); ++fi) {
            GrayMap fm(1, 1);
            try {
                fm = load_gray(rec.fm_paths[fi]);
                require_same_dims(fm, gt);
            } catch (const Error& e) {
                for (const auto& m : metrics)
                    rows.push_back({rec.id, static_cast<int>(fi), m.name, std::nullopt, e.what()});
                continue;
            }
            for (const auto& m : metrics) {
                EvalRow row{rec.id, static_cast<int>(fi), m.name, std::nullopt, {}};
                try {
                    row.score = m.score(ScoredView{fm, gt, image ? &*image : nullptr});
                } catch (const Error& e) {
                    row.error = e.what();
                }
                rows.push_back(std::move(row));
            }
        }
    });

    std::vector<EvalRow> rows;
    for (auto& rr : per_record)
        for (auto& r : rr.rows) rows.push_back(std::move(r));

    std::map<std::string, size_t> order;
    for (size_t i = 0; i < metric_order().size(); ++i) order[metric_order()[i]] = i;
    std::stable_sort(rows.begin(), rows.end(), [&](const EvalRow& a, const EvalRow& b) {
        if (a.id != b.id) return a.id < b.id;
        if (a.fm_index != b.fm_index) return a.fm_index < b.fm_index;
        return order.at(a.metric) < order.at(b.metric);
    });

    if (config.format == ReportFormat::Csv)
        write_eval_csv(rows, out);
    else
        write_eval_json(rows, out);
    return static_cast<int>(std::count_if(rows.begin(), rows.end(),
                                          [](const EvalRow& r) { return !r.error.empty(); }));
}

namespace {

std::string sanitize_id(const std::string& id) {
    std::string s = id;
    for (char& c : s)
        if (c == '/' || c == '\\' || c == ':') c = '_';
    return s;
}

}  // namespace

int cmd_camo_map(const Manifest& manifest, const RunConfig& config, const std::string& out_dir,
                 std::ostream& log) {
    fs::create_directories(out_dir);
    std::vector<std::string> lines(manifest.records.size());
    std::vector<int> failed(manifest.records.size(), 0);

    detail::parallel_for(manifest.records.size(), config.threads, [&](size_t ri) {
        const ManifestRecord& rec = manifest.records[ri];
        try {
            if (!rec.image_path) throw MissingImage("record has no RGB image");
            const RgbImage image = load_rgb(*rec.image_path);
            const BinaryMask gt = load_binary(rec.gt_path);
            const CamoMap d = quantify(image, gt, config.camo);
            const std::string stem = (fs::path(out_dir) / sanitize_id(rec.id)).string();
            save_gray16_png(d.map(), stem + "_camo.png");
            save_heatmap_png(d.map(), stem + "_camo_preview.png");
            lines[ri] = rec.id + ": ok";
        } catch (const Error& e) {
            lines[ri] = rec.id + ": error: " + e.what();
            failed[ri] = 1;
        }
    });

    for (const auto& l : lines) log << l << '\n';
    int failures = 0;
    for (int f : failed) failures += f;
    return failures;
}

Protocol parse_protocol(const std::string& name) {
    if (name == "mm1") return Protocol::MM1;
    if (name == "mm2") return Protocol::MM2;
    if (name == "mm3") return Protocol::MM3;
    if (name == "mm4-erode") return Protocol::MM4Erode;
    if (name == "mm4-dilate") return Protocol::MM4Dilate;
    throw Error("unknown protocol '" + name + "' (mm1, mm2, mm3, mm4-erode, mm4-dilate)");
}

std::vector<MetaResult> cmd_meta(const Manifest& manifest, const RunConfig& config,
                                 Protocol protocol, std::ostream& out) {
    const std::vector<Metric> metrics = build_metrics(config, /*for_meta=*/true);
    const bool wants_image =
        std::any_of(metrics.begin(), metrics.end(), [](const Metric& m) { return m.needs_image; });
    const RunOptions opt{config.seed, config.threads, config.noise_requires_low_prediction};

    std::vector<MetaResult> results;
    if (protocol == Protocol::MM1) {
        std::vector<RankedGroup> groups;
        for (const auto& rec : manifest.records) {
            if (!rec.human_rank) continue;
            if (rec.fm_paths.size() != 3)
                throw Error("ranked group '" + rec.id + "' must have exactly three predictions");
            std::vector<GrayMap> fms;
            for (const auto& p : rec.fm_paths) fms.push_back(load_gray(p));
            std::optional<RgbImage> image;
            if (wants_image && rec.image_path) image = load_rgb(*rec.image_path);
            groups.push_back(RankedGroup{rec.id, std::move(image), load_binary(rec.gt_path),
                                         std::move(fms), *rec.human_rank});
        }
        if (groups.empty()) throw Error("manifest has no human-ranked groups for mm1");
        for (const auto& m : metrics) results.push_back(mm1_run(groups, m, opt));
    } else {
        std::vector<SamplePair> pairs;
        for (const auto& rec : manifest.records) {
            const BinaryMask gt = load_binary(rec.gt_path);
            std::optional<RgbImage> image;
            if (wants_image && rec.image_path) image = load_rgb(*rec.image_path);
            for (size_t fi = 0; fi < rec.fm_paths.size(); ++fi) {
                SamplePair pair{rec.fm_paths.size() == 1 ? rec.id
                                                         : rec.id + "#" + std::to_string(fi),
                                load_gray(rec.fm_paths[fi]), gt, image};
                pairs.push_back(std::move(pair));
            }
        }
        if (pairs.empty()) throw Error("manifest has no evaluation pairs");
        for (const auto& m : metrics) {
            switch (protocol) {
                case Protocol::MM2: results.push_back(mm2_run(pairs, m, opt)); break;
                case Protocol::MM3: results.push_back(mm3_run(pairs, m, opt)); break;
                case Protocol::MM4Erode:
                    results.push_back(mm4_run(pairs, m, MorphOp::Erode, opt));
                    break;
                case Protocol::MM4Dilate:
                    results.push_back(mm4_run(pairs, m, MorphOp::Dilate, opt));
                    break;
                default: break;
            }
        }
    }

    if (config.format == ReportFormat::Csv)
        write_meta_csv(results, out);
    else
        write_meta_json(results, out);
    return results;
}

bool cmd_selftest(std::ostream& out) {
    bool all = true;
    for (const auto& r : run_selftest()) {
        out << (r.passed ? "[ok]   " : "[FAIL] ") << r.suite << ": " << r.detail << '\n';
        all = all && r.passed;
    }
    out << (all ? "selftest passed" : "selftest FAILED") << '\n';
    return all;
}

}  // namespace camoeval
