// Generates the on-disk corpus for the end-to-end CLI tests: a handful of
// well-separated objects with perfect and degraded predictions, plus ranked
// groups, all referenced from one JSON-lines manifest.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "camoeval/image_io.hpp"
#include "camoeval/raster.hpp"

using namespace camoeval;
namespace fs = std::filesystem;

namespace {

BinaryMask block(int w, int h, int r0, int c0, int side) {
    BinaryMask m(w, h);
    for (int r = r0; r < r0 + side; ++r)
        for (int c = c0; c < c0 + side; ++c) m.set(r, c, true);
    return m;
}

GrayMap gradient(int w, int h) {
    GrayMap g(w, h);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c)
            g.set(r, c, static_cast<double>(r + c) / (w + h - 2));
    return g;
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::cerr << "usage: " << argv[0] << " <output-dir>\n";
        return 2;
    }
    const fs::path dir(argv[1]);
    fs::create_directories(dir);
    std::ofstream manifest(dir / "manifest.jsonl");

    const int side = 96;
    // four plain pairs with perfect predictions, objects far apart in-frame
    for (int i = 0; i < 4; ++i) {
        const int r0 = 12 + 40 * (i / 2), c0 = 12 + 40 * (i % 2);
        const BinaryMask gt = block(side, side, r0, c0, 11);
        const std::string stem = "pair" + std::to_string(i);
        save_gray16_png(gt.to_gray(), (dir / (stem + "_gt.png")).string());
        save_gray16_png(gt.to_gray(), (dir / (stem + "_fm.png")).string());
        save_heatmap_png(gradient(side, side), (dir / (stem + "_img.png")).string());
        manifest << R"({"id":")" << stem << R"(","gt":")" << stem << R"(_gt.png","fms":[")"
                 << stem << R"(_fm.png"],"image":")" << stem << R"(_img.png"})" << "\n";
    }
    // two ranked groups: perfect / eroded / heavily eroded predictions
    for (int g = 0; g < 2; ++g) {
        const BinaryMask gt = block(side, side, 30, 26 + 8 * g, 20);
        const std::string stem = "group" + std::to_string(g);
        save_gray16_png(gt.to_gray(), (dir / (stem + "_gt.png")).string());
        save_gray16_png(gt.to_gray(), (dir / (stem + "_fm0.png")).string());
        save_gray16_png(morph(gt, MorphOp::Erode, 2).to_gray(),
                        (dir / (stem + "_fm1.png")).string());
        save_gray16_png(morph(gt, MorphOp::Erode, 5).to_gray(),
                        (dir / (stem + "_fm2.png")).string());
        save_heatmap_png(gradient(side, side), (dir / (stem + "_img.png")).string());
        manifest << R"({"id":")" << stem << R"(","gt":")" << stem << R"(_gt.png","fms":[")"
                 << stem << R"(_fm0.png",")" << stem << R"(_fm1.png",")" << stem
                 << R"(_fm2.png"],"image":")" << stem
                 << R"(_img.png","human_rank":[1,2,3]})" << "\n";
    }
    // flat key=value configuration exercising --config
    std::ofstream cfg(dir / "run.cfg");
    cfg << "threads=2\n"
           "alpha=6\n"
           "beta=1.0\n"
           "beta-camo=1.2\n"
           "gamma=8\n"
           "metrics=iou,cbeta\n";

    std::cout << "wrote corpus to " << dir << "\n";
    return 0;
}
