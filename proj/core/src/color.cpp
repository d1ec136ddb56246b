#include "camoeval/color.hpp"

#include <algorithm>
#include <cmath>

namespace camoeval {

RgbImage::RgbImage(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw Error("RgbImage dimensions must be >= 1");
    values_.assign(static_cast<size_t>(width) * height * 3, 0);
}

RgbImage RgbImage::from_values(int width, int height, std::vector<std::uint8_t> rgb) {
    RgbImage img(width, height);
    if (rgb.size() != static_cast<size_t>(width) * height * 3)
        throw Error("RgbImage value count does not match dimensions");
    img.values_ = std::move(rgb);
    return img;
}

void RgbImage::set(int row, int col, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    auto* p = &values_[(static_cast<size_t>(row) * width_ + col) * 3];
    p[0] = r;
    p[1] = g;
    p[2] = b;
}

LabImage::LabImage(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1) throw Error("LabImage dimensions must be >= 1");
    values_.assign(static_cast<size_t>(width) * height, LabTriple{});
}

namespace {

inline double srgb_decode(std::uint8_t v8) {
    const double c = v8 / 255.0;
    return c <= 0.04045 ? c / 12.92 : std::pow((c + 0.055) / 1.055, 2.4);
}

inline double lab_f(double t) {
    constexpr double delta = 6.0 / 29.0;
    constexpr double delta3 = delta * delta * delta;
    return t > delta3 ? std::cbrt(t) : t / (3.0 * delta * delta) + 4.0 / 29.0;
}

constexpr double kDeg2Rad = 3.14159265358979323846 / 180.0;
constexpr double kRad2Deg = 180.0 / 3.14159265358979323846;
constexpr double kPow25_7 = 6103515625.0;  // 25^7

}  // namespace

LabTriple srgb_to_lab(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8) {
    const double r = srgb_decode(r8), g = srgb_decode(g8), b = srgb_decode(b8);
    const double x = 0.4124564 * r + 0.3575761 * g + 0.1804375 * b;
    const double y = 0.2126729 * r + 0.7151522 * g + 0.0721750 * b;
    const double z = 0.0193339 * r + 0.1191920 * g + 0.9503041 * b;
    // D65 reference white
    const double fx = lab_f(x / 0.95047);
    const double fy = lab_f(y / 1.0);
    const double fz = lab_f(z / 1.08883);
    LabTriple lab;
    // The sRGB matrix above is rounded, so pure white lands a hair above 100.
    lab.l = std::clamp(116.0 * fy - 16.0, 0.0, 100.0);
    lab.a = 500.0 * (fx - fy);
    lab.b = 200.0 * (fy - fz);
    return lab;
}

LabImage rgb_to_lab(const RgbImage& img) {
    LabImage out(img.width(), img.height());
    for (int r = 0; r < img.height(); ++r) {
        for (int c = 0; c < img.width(); ++c) {
            const std::uint8_t* p = img.at(r, c);
            out.set(r, c, srgb_to_lab(p[0], p[1], p[2]));
        }
    }
    return out;
}

double ciede2000(const LabTriple& c1, const LabTriple& c2) {
    // Implementation follows the CIEDE2000 definition with the hue-angle
    // branch handling from Sharma, Wu & Dalal's implementation notes.
    const double chroma1 = std::hypot(c1.a, c1.b);
    const double chroma2 = std::hypot(c2.a, c2.b);
    const double chroma_mean = 0.5 * (chroma1 + chroma2);

    const double cm7 = std::pow(chroma_mean, 7.0);
    const double g = 0.5 * (1.0 - std::sqrt(cm7 / (cm7 + kPow25_7)));

    const double a1p = (1.0 + g) * c1.a;
    const double a2p = (1.0 + g) * c2.a;
    const double c1p = std::hypot(a1p, c1.b);
    const double c2p = std::hypot(a2p, c2.b);

    auto hue_deg = [](double ap, double b) {
        if (ap == 0.0 && b == 0.0) return 0.0;
        double h = std::atan2(b, ap) * kRad2Deg;
        return h < 0.0 ? h + 360.0 : h;
    };
    const double h1p = hue_deg(a1p, c1.b);
    const double h2p = hue_deg(a2p, c2.b);

    const double dlp = c2.l - c1.l;
    const double dcp = c2p - c1p;

    double dhp = 0.0;
    if (c1p * c2p != 0.0) {
        dhp = h2p - h1p;
        if (dhp > 180.0)
            dhp -= 360.0;
        else if (dhp < -180.0)
            dhp += 360.0;
    }
    const double dHp = 2.0 * std::sqrt(c1p * c2p) * std::sin(0.5 * dhp * kDeg2Rad);

    const double lp_mean = 0.5 * (c1.l + c2.l);
    const double cp_mean = 0.5 * (c1p + c2p);

    double hp_mean;
    if (c1p * c2p == 0.0) {
        hp_mean = h1p + h2p;
    } else if (std::abs(h1p - h2p) <= 180.0) {
        hp_mean = 0.5 * (h1p + h2p);
    } else if (h1p + h2p < 360.0) {
        hp_mean = 0.5 * (h1p + h2p + 360.0);
    } else {
        hp_mean = 0.5 * (h1p + h2p - 360.0);
    }

    const double t = 1.0 - 0.17 * std::cos((hp_mean - 30.0) * kDeg2Rad) +
                     0.24 * std::cos(2.0 * hp_mean * kDeg2Rad) +
                     0.32 * std::cos((3.0 * hp_mean + 6.0) * kDeg2Rad) -
                     0.20 * std::cos((4.0 * hp_mean - 63.0) * kDeg2Rad);

    const double dtheta = 30.0 * std::exp(-((hp_mean - 275.0) / 25.0) * ((hp_mean - 275.0) / 25.0));
    const double cpm7 = std::pow(cp_mean, 7.0);
    const double rc = 2.0 * std::sqrt(cpm7 / (cpm7 + kPow25_7));
    const double rt = -std::sin(2.0 * dtheta * kDeg2Rad) * rc;

    const double lm50 = (lp_mean - 50.0) * (lp_mean - 50.0);
    const double sl = 1.0 + 0.015 * lm50 / std::sqrt(20.0 + lm50);
    const double sc = 1.0 + 0.045 * cp_mean;
    const double sh = 1.0 + 0.015 * cp_mean * t;

    const double tl = dlp / sl;
    const double tc = dcp / sc;
    const double th = dHp / sh;
    const double de = std::sqrt(tl * tl + tc * tc + th * th + rt * tc * th);
    return std::clamp(de, 0.0, 100.0);
}

}  // namespace camoeval
