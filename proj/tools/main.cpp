#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "camoeval/runner.hpp"

namespace {

struct CliArgs {
    std::string manifest;
    std::string out;       // empty = stdout
    std::string out_dir;   // camo-map only
    std::string protocol;  // meta only
    std::string format = "csv";
    std::vector<std::string> metrics;
    camoeval::RunConfig config;
    bool seed_given = false;
};

int run(const CliArgs& args, const std::function<int(std::ostream&)>& body) {
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!args.out.empty()) {
        file.open(args.out, std::ios::binary);
        if (!file) {
            std::cerr << "cannot open output file " << args.out << '\n';
            return 2;
        }
        out = &file;
    }
    try {
        return body(*out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Contextual evaluation toolkit for camouflaged-object segmentation"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "flat key=value configuration file");

    CliArgs args;

    // tuning knobs shared by every subcommand (and settable from --config)
    app.add_option("--metrics", args.metrics,
                   "comma-separated metric subset (mae,iou,fbeta,fbetaw,smeasure,emeasure,"
                   "cbeta,cbetaw)")
        ->delimiter(',');
    app.add_option("--format", args.format, "report format")
        ->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--threads", args.config.threads, "worker threads (0 = hardware)");
    app.add_option("--alpha", args.config.cm.alpha, "kernel scale");
    app.add_option("--beta", args.config.cm.beta, "generic loop balance");
    app.add_option("--beta-camo", args.config.camo_beta, "camouflaged loop balance");
    app.add_option("--gamma", args.config.camo.gamma, "degree-mapping nonlinearity");
    app.add_option("--lambda", args.config.camo.coord_scale, "patch coordinate scale");
    app.add_option("--band", args.config.camo.band_width, "context band width, pixels");
    app.add_option("--patch", args.config.camo.patch_size, "patch side length");
    app.add_option("--overlap", args.config.camo.overlap, "patch overlap, pixels");
    app.add_option("--nn-eps", args.config.camo.nn_eps, "approximate-NN slack (0 = exact)");
    app.add_option("--fbeta-sq", args.config.baselines.beta_sq_f, "F-measure beta^2");
    app.add_option("--alpha-s", args.config.baselines.alpha_s, "S-measure mix");
    auto* seed_opt = app.add_option("--seed", args.config.seed, "master random seed");
    app.add_flag("--mm3-low-prediction", args.config.noise_requires_low_prediction,
                 "restrict MM3 noise to background pixels with X < 0.1");

    const auto manifest_opt = [&](CLI::App* cmd) {
        cmd->add_option("-m,--manifest", args.manifest, "JSON-lines manifest file")
            ->required()
            ->check(CLI::ExistingFile);
    };

    CLI::App* eval = app.add_subcommand("eval", "score every (prediction, GT) pair");
    manifest_opt(eval);
    eval->add_option("-o,--out", args.out, "report file (default stdout)");

    CLI::App* camo = app.add_subcommand("camo-map", "export camouflage-degree maps");
    manifest_opt(camo);
    camo->add_option("-d,--out-dir", args.out_dir, "output directory for PNGs")->required();

    CLI::App* meta = app.add_subcommand("meta", "run one meta-measure protocol");
    manifest_opt(meta);
    meta->add_option("-p,--protocol", args.protocol, "mm1 | mm2 | mm3 | mm4-erode | mm4-dilate")
        ->required();
    meta->add_option("-o,--out", args.out, "report file (default stdout)");

    CLI::App* selftest = app.add_subcommand("selftest", "run the embedded oracle fixtures");
    (void)selftest;

    CLI11_PARSE(app, argc, argv);

    args.config.metrics = args.metrics;
    args.config.format =
        args.format == "json" ? camoeval::ReportFormat::Json : camoeval::ReportFormat::Csv;
    if (args.config.threads == 0)
        args.config.threads = std::max(1u, std::thread::hardware_concurrency());
    args.seed_given = seed_opt->count() > 0;

    if (eval->parsed()) {
        return run(args, [&](std::ostream& out) {
            const auto manifest = camoeval::Manifest::load(args.manifest);
            return camoeval::cmd_eval(manifest, args.config, out) > 0 ? 1 : 0;
        });
    }
    if (camo->parsed()) {
        return run(args, [&](std::ostream& out) {
            const auto manifest = camoeval::Manifest::load(args.manifest);
            return camoeval::cmd_camo_map(manifest, args.config, args.out_dir, out) > 0 ? 1 : 0;
        });
    }
    if (meta->parsed()) {
        return run(args, [&](std::ostream& out) {
            const auto protocol = camoeval::parse_protocol(args.protocol);
            if ((protocol == camoeval::Protocol::MM2 || protocol == camoeval::Protocol::MM3) &&
                !args.seed_given)
                throw camoeval::Error("--seed is required for mm2 and mm3");
            const auto manifest = camoeval::Manifest::load(args.manifest);
            camoeval::cmd_meta(manifest, args.config, protocol, out);
            return 0;
        });
    }
    return camoeval::cmd_selftest(std::cout) ? 0 : 1;
}
