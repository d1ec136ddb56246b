#include "camoeval/image_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>

#include <opencv2/core.hpp>
#include <opencv2/imgcodecs.hpp>

namespace camoeval {

namespace {

cv::Mat decode(const std::string& path) {
    if (!std::filesystem::exists(path)) throw IoError("no such file: " + path);
    cv::Mat img = cv::imread(path, cv::IMREAD_UNCHANGED);
    if (img.empty()) throw DecodeError("cannot decode image: " + path);
    return img;
}

// Scaled-to-[0,1] intensity; color input collapses via Rec.601 luminance.
std::vector<double> to_unit_gray(const cv::Mat& img, const std::string& path) {
    const int depth = img.depth();
    if (depth != CV_8U && depth != CV_16U)
        throw DecodeError("unsupported bit depth in " + path);
    const double scale = depth == CV_8U ? 255.0 : 65535.0;
    const int ch = img.channels();
    if (ch != 1 && ch != 3 && ch != 4) throw DecodeError("unsupported channel count in " + path);

    std::vector<double> out(static_cast<size_t>(img.rows) * img.cols);
    for (int r = 0; r < img.rows; ++r) {
        for (int c = 0; c < img.cols; ++c) {
            double v;
            if (ch == 1) {
                v = depth == CV_8U ? img.at<std::uint8_t>(r, c) : img.at<std::uint16_t>(r, c);
            } else {
                // OpenCV stores BGR(A)
                double b, g, rr;
                if (depth == CV_8U) {
                    const auto* p = img.ptr<std::uint8_t>(r) + static_cast<size_t>(c) * ch;
                    b = p[0]; g = p[1]; rr = p[2];
                } else {
                    const auto* p = img.ptr<std::uint16_t>(r) + static_cast<size_t>(c) * ch;
                    b = p[0]; g = p[1]; rr = p[2];
                }
                v = 0.299 * rr + 0.587 * g + 0.114 * b;
            }
            out[static_cast<size_t>(r) * img.cols + c] = std::clamp(v / scale, 0.0, 1.0);
        }
    }
    return out;
}

}  // namespace

GrayMap load_gray(const std::string& path) {
    const cv::Mat img = decode(path);
    return GrayMap::from_values(img.cols, img.rows, to_unit_gray(img, path));
}

BinaryMask load_binary(const std::string& path) {
    const cv::Mat img = decode(path);
    const auto gray = to_unit_gray(img, path);
    std::vector<std::uint8_t> mask(gray.size());
    for (size_t i = 0; i < gray.size(); ++i) mask[i] = gray[i] >= 0.5 ? 1 : 0;
    return BinaryMask::from_values(img.cols, img.rows, std::move(mask));
}

RgbImage load_rgb(const std::string& path) {
    if (!std::filesystem::exists(path)) throw IoError("no such file: " + path);
    cv::Mat img = cv::imread(path, cv::IMREAD_COLOR);  // 8-bit BGR
    if (img.empty()) throw DecodeError("cannot decode image: " + path);
    RgbImage out(img.cols, img.rows);
    for (int r = 0; r < img.rows; ++r) {
        const auto* p = img.ptr<std::uint8_t>(r);
        for (int c = 0; c < img.cols; ++c)
            out.set(r, c, p[c * 3 + 2], p[c * 3 + 1], p[c * 3 + 0]);
    }
    return out;
}

void save_gray16_png(const GrayMap& map, const std::string& path) {
    cv::Mat img(map.height(), map.width(), CV_16UC1);
    for (int r = 0; r < map.height(); ++r) {
        auto* p = img.ptr<std::uint16_t>(r);
        for (int c = 0; c < map.width(); ++c)
            p[c] = static_cast<std::uint16_t>(std::lround(map.at(r, c) * 65535.0));
    }
    if (!cv::imwrite(path, img)) throw IoError("cannot write " + path);
}

namespace {

// Embedded blue-to-red ramp (cold = low, warm = high); no external assets so
// previews reproduce everywhere.
constexpr std::array<std::array<double, 3>, 6> kRampStops = {{
    {0.0, 0.0, 131.0},
    {0.0, 60.0, 170.0},
    {5.0, 255.0, 255.0},
    {255.0, 255.0, 0.0},
    {255.0, 0.0, 0.0},
    {128.0, 0.0, 0.0},
}};

}  // namespace

void heatmap_color(double value, std::uint8_t rgb[3]) {
    const double v = std::clamp(value, 0.0, 1.0) * (kRampStops.size() - 1);
    const size_t lo = std::min(static_cast<size_t>(v), kRampStops.size() - 2);
    const double t = v - static_cast<double>(lo);
    for (int ch = 0; ch < 3; ++ch) {
        const double c = kRampStops[lo][ch] + t * (kRampStops[lo + 1][ch] - kRampStops[lo][ch]);
        rgb[ch] = static_cast<std::uint8_t>(std::lround(c));
    }
}

void save_heatmap_png(const GrayMap& map, const std::string& path) {
    cv::Mat img(map.height(), map.width(), CV_8UC3);
    for (int r = 0; r < map.height(); ++r) {
        auto* p = img.ptr<std::uint8_t>(r);
        for (int c = 0; c < map.width(); ++c) {
            std::uint8_t rgb[3];
            heatmap_color(map.at(r, c), rgb);
            p[c * 3 + 0] = rgb[2];  // BGR
            p[c * 3 + 1] = rgb[1];
            p[c * 3 + 2] = rgb[0];
        }
    }
    if (!cv::imwrite(path, img)) throw IoError("cannot write " + path);
}

}  // namespace camoeval
