#include "camoeval/selftest.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "camoeval/camouflage.hpp"
#include "camoeval/context_measure.hpp"
#include "camoeval/correlation.hpp"
#include "rng.hpp"

namespace camoeval {

namespace {

// The published CIEDE2000 verification data (Lab pairs with reference
// differences quoted to four decimals).
constexpr Ciede2000Case kCiede2000Cases[] = {
    {{50.0000, 2.6772, -79.7751}, {50.0000, 0.0000, -82.7485}, 2.0425},
    {{50.0000, 3.1571, -77.2803}, {50.0000, 0.0000, -82.7485}, 2.8615},
    {{50.0000, 2.8361, -74.0200}, {50.0000, 0.0000, -82.7485}, 3.4412},
    {{50.0000, -1.3802, -84.2814}, {50.0000, 0.0000, -82.7485}, 1.0000},
    {{50.0000, -1.1848, -84.8006}, {50.0000, 0.0000, -82.7485}, 1.0000},
    {{50.0000, -0.9009, -85.5211}, {50.0000, 0.0000, -82.7485}, 1.0000},
    {{50.0000, 0.0000, 0.0000}, {50.0000, -1.0000, 2.0000}, 2.3669},
    {{50.0000, -1.0000, 2.0000}, {50.0000, 0.0000, 0.0000}, 2.3669},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0009}, 7.1792},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0010}, 7.1792},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0011}, 7.2195},
    {{50.0000, 2.4900, -0.0010}, {50.0000, -2.4900, 0.0012}, 7.2195},
    {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0009, -2.4900}, 4.8045},
    {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0010, -2.4900}, 4.8045},
    {{50.0000, -0.0010, 2.4900}, {50.0000, 0.0011, -2.4900}, 4.7461},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 0.0000, -2.5000}, 4.3065},
    {{50.0000, 2.5000, 0.0000}, {73.0000, 25.0000, -18.0000}, 27.1492},
    {{50.0000, 2.5000, 0.0000}, {61.0000, -5.0000, 29.0000}, 22.8977},
    {{50.0000, 2.5000, 0.0000}, {56.0000, -27.0000, -3.0000}, 31.9030},
    {{50.0000, 2.5000, 0.0000}, {58.0000, 24.0000, 15.0000}, 19.4535},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 3.1736, 0.5854}, 1.0000},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 3.2972, 0.0000}, 1.0000},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 1.8634, 0.5757}, 1.0000},
    {{50.0000, 2.5000, 0.0000}, {50.0000, 3.2592, 0.3350}, 1.0000},
    {{60.2574, -34.0099, 36.2677}, {60.4626, -34.1751, 39.4387}, 1.2644},
    {{63.0109, -31.0961, -5.8663}, {62.8187, -29.7946, -4.0864}, 1.2630},
    {{61.2901, 3.7196, -5.3901}, {61.4292, 2.2480, -4.9620}, 1.8731},
    {{35.0831, -44.1164, 3.7933}, {35.0232, -40.0716, 1.5901}, 1.8645},
    {{22.7233, 20.0904, -46.6940}, {23.0331, 14.9730, -42.5619}, 2.0373},
    {{36.4612, 47.8580, 18.3852}, {36.2715, 50.5065, 21.2231}, 1.4146},
    {{90.8027, -2.0831, 1.4410}, {91.1528, -1.6435, 0.0447}, 1.4441},
    {{90.9257, -0.5406, -0.9208}, {88.6381, -0.8985, -0.7239}, 1.5381},
    {{6.7747, -0.2908, -2.4247}, {5.8714, -0.0985, -2.2286}, 0.6377},
    {{2.0776, 0.0795, -1.1350}, {0.9033, -0.0636, -0.5514}, 0.9082},
};

BinaryMask random_ellipse(int w, int h, detail::Rng& rng) {
    BinaryMask y(w, h);
    const double cr = 0.3 * h + rng.unit() * 0.4 * h;
    const double cc = 0.3 * w + rng.unit() * 0.4 * w;
    const double ar = 2.0 + rng.unit() * (0.25 * h);
    const double ac = 2.0 + rng.unit() * (0.25 * w);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) {
            const double dr = (r - cr) / ar, dc = (c - cc) / ac;
            if (dr * dr + dc * dc <= 1.0) y.set(r, c, true);
        }
    if (y.count() < 4) {  // degenerate draw, fall back to a small block
        for (int r = h / 2 - 2; r < h / 2 + 2; ++r)
            for (int c = w / 2 - 2; c < w / 2 + 2; ++c) y.set(r, c, true);
    }
    return y;
}

GrayMap random_map(int w, int h, detail::Rng& rng) {
    std::vector<double> v(static_cast<size_t>(w) * h);
    for (double& x : v) x = rng.unit();
    return GrayMap::from_values(w, h, std::move(v));
}

SelftestResult check_ciede2000() {
    double worst = 0.0;
    for (const auto& c : kCiede2000Cases)
        worst = std::max(worst, std::abs(ciede2000(c.first, c.second) - c.expected));
    std::ostringstream d;
    d << "34 pairs, worst |diff| = " << worst;
    return {"ciede2000-verification", worst <= 1e-4, d.str()};
}

SelftestResult check_convolution() {
    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        detail::Rng rng(seed);
        const int w = 32, h = 32;
        const BinaryMask y = random_ellipse(w, h, rng);
        const GrayMap x = random_map(w, h, rng);
        const auto cov = normalize_covariance(estimate_covariance(foreground_pixels(y)), 6.0);
        const GaussianKernel k = build_kernel(cov);
        const GrayMap fast = forward_inference(x, y, k);
        for (int r = 0; r < h; ++r)
            for (int c = 0; c < w; ++c) {
                double acc = 0.0;
                for (int dr = -k.half_rows(); dr <= k.half_rows(); ++dr)
                    for (int dc = -k.half_cols(); dc <= k.half_cols(); ++dc) {
                        const int rr = r + dr, cc = c + dc;
                        if (rr < 0 || rr >= h || cc < 0 || cc >= w || !y.at(rr, cc)) continue;
                        acc += pixel_correlation({r, c}, {rr, cc}, cov);
                    }
                worst = std::max(worst, std::abs(fast.at(r, c) - x.at(r, c) * acc));
            }
    }
    std::ostringstream d;
    d << "5 random pairs, max |conv - direct sum| = " << worst;
    return {"convolution-double-sum", worst <= 1e-10, d.str()};
}

SelftestResult check_reverse_approximation() {
    double worst = 0.0;
    constexpr double kRescale = 2.718281828459045235360287 / (2.718281828459045235360287 - 1.0);
    for (std::uint64_t seed = 11; seed <= 15; ++seed) {
        detail::Rng rng(seed);
        const int w = 24, h = 24;
        const BinaryMask y = random_ellipse(w, h, rng);
        GrayMap x(w, h);
        const int picks = (w * h) / 100;  // ~1% density
        for (int i = 0; i < std::max(picks, 1); ++i)
            x.set(static_cast<int>(rng.bounded(h)), static_cast<int>(rng.bounded(w)),
                  0.1 * rng.unit());
        const auto cov = normalize_covariance(estimate_covariance(foreground_pixels(y)), 6.0);
        const GaussianKernel k = build_kernel(cov);
        const GrayMap approx = reverse_deduction(x, y, k);
        const GrayMap exact = reverse_exact(x, y, cov);
        for (size_t i = 0; i < approx.values().size(); ++i)
            worst = std::max(worst,
                             std::abs(approx.values()[i] - kRescale * exact.values()[i]));
    }
    std::ostringstream d;
    d << "5 sparse instances, max |approx - rescaled exact| = " << worst;
    return {"reverse-approximation", worst <= 1e-3, d.str()};
}

SelftestResult check_degree_endpoints() {
    const double at_zero = camouflage_degree(0.0, 8.0);
    const double at_hundred = camouflage_degree(100.0, 8.0);
    const double at_fifty = camouflage_degree(50.0, 8.0);
    const bool ok = at_zero == 1.0 && at_hundred == 0.0 &&
                    std::abs(at_fifty - 0.017986209962091555) <= 1e-12;
    std::ostringstream d;
    d << "D(0)=" << at_zero << " D(100)=" << at_hundred << " D(50)=" << at_fifty;
    return {"degree-endpoints", ok, d.str()};
}

}  // namespace

std::span<const Ciede2000Case> ciede2000_cases() { return kCiede2000Cases; }

std::vector<SelftestResult> run_selftest() {
    return {check_ciede2000(), check_convolution(), check_reverse_approximation(),
            check_degree_endpoints()};
}

}  // namespace camoeval
