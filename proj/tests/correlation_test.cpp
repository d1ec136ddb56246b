#include <doctest.h>

#include <cmath>
#include <random>

#include "camoeval/correlation.hpp"
#include "fixtures.hpp"

using namespace camoeval;
using namespace camoeval::testing;

TEST_SUITE_BEGIN("correlation");

namespace {

// Direct double-sum evaluation of the smoothed field, restricted to the
// kernel support; the oracle for the convolution route.
double smoothed_at(const GrayMap& map, const NormalizedCovariance& cov, const GaussianKernel& k,
                   int r, int c) {
    double acc = 0.0;
    for (int dr = -k.half_rows(); dr <= k.half_rows(); ++dr)
        for (int dc = -k.half_cols(); dc <= k.half_cols(); ++dc) {
            const int rr = r + dr, cc = c + dc;
            if (rr < 0 || rr >= map.height() || cc < 0 || cc >= map.width()) continue;
            const double v = map.at(rr, cc);
            if (v == 0.0) continue;
            acc += v * pixel_correlation({r, c}, {rr, cc}, cov);
        }
    return acc;
}

}  // namespace

TEST_CASE("covariance estimation") {
    SUBCASE("empty foreground is an error") {
        CHECK_THROWS_AS(estimate_covariance({}), EmptyForeground);
    }
    SUBCASE("single pixel degenerates to the regularizer") {
        const std::vector<PixelCoord> fg{{4, 9}};
        const ShapeCovariance cov = estimate_covariance(fg);
        CHECK(cov.sigma.rr == doctest::Approx(1e-6));
        CHECK(cov.sigma.cc == doctest::Approx(1e-6));
        CHECK(cov.sigma.rc == 0.0);
        CHECK(cov.mean_row == 4.0);
        CHECK(cov.mean_col == 9.0);
    }
    SUBCASE("horizontal 1x9 line: column variance 7.5, row variance epsilon") {
        std::vector<PixelCoord> fg;
        for (int c = 0; c < 9; ++c) fg.push_back({5, c});
        const ShapeCovariance cov = estimate_covariance(fg);
        CHECK(cov.sigma.cc == doctest::Approx(7.5 + 1e-6).epsilon(1e-12));
        CHECK(cov.sigma.rr == doctest::Approx(1e-6).epsilon(1e-12));
        CHECK(cov.sigma.rc == doctest::Approx(0.0));
    }
    SUBCASE("centered disk is isotropic with no cross term") {
        const BinaryMask disk = disk_mask(41, 41, 20, 20, 12.3);
        const auto fg = foreground_pixels(disk);
        const ShapeCovariance cov = estimate_covariance(fg);
        // brute-force sums over the disk pixels
        double mr = 0, mc = 0;
        for (const auto& p : fg) {
            mr += p.row;
            mc += p.col;
        }
        mr /= fg.size();
        mc /= fg.size();
        double srr = 0, scc = 0, src = 0;
        for (const auto& p : fg) {
            srr += (p.row - mr) * (p.row - mr);
            scc += (p.col - mc) * (p.col - mc);
            src += (p.row - mr) * (p.col - mc);
        }
        const double n1 = static_cast<double>(fg.size()) - 1.0;
        CHECK(cov.sigma.rr == doctest::Approx(srr / n1 + 1e-6).epsilon(1e-12));
        CHECK(cov.sigma.cc == doctest::Approx(scc / n1 + 1e-6).epsilon(1e-12));
        CHECK(cov.sigma.rc == doctest::Approx(src / n1).epsilon(1e-9));
        CHECK(cov.sigma.rr == doctest::Approx(cov.sigma.cc).epsilon(1e-9));
        CHECK(std::abs(cov.sigma.rc) < 1e-9);
    }
}

TEST_CASE("covariance normalization") {
    SUBCASE("identity with alpha 6 scales to 18I") {
        const NormalizedCovariance n = normalize_covariance({{1.0, 0.0, 1.0}, 0, 0}, 6.0);
        CHECK(n.sigma_hat.rr == doctest::Approx(18.0));
        CHECK(n.sigma_hat.cc == doctest::Approx(18.0));
        CHECK(n.sigma_hat.rc == 0.0);
    }
    SUBCASE("diag(3,1) scales to diag(27,9)") {
        const NormalizedCovariance n = normalize_covariance({{3.0, 0.0, 1.0}, 0, 0}, 6.0);
        CHECK(n.sigma_hat.rr == doctest::Approx(27.0));
        CHECK(n.sigma_hat.cc == doctest::Approx(9.0));
    }
    SUBCASE("trace equals alpha^2 and anisotropy is preserved on random SPD") {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.1, 30.0);
        for (int i = 0; i < 100; ++i) {
            const double a = u(rng), c = u(rng);
            std::uniform_real_distribution<double> b(-std::sqrt(a * c) * 0.9,
                                                     std::sqrt(a * c) * 0.9);
            const Sym2 sigma{a, b(rng), c};
            const NormalizedCovariance n = normalize_covariance({sigma, 0, 0}, 6.0);
            CHECK(n.sigma_hat.trace() == doctest::Approx(36.0).epsilon(1e-9));
            const auto [lo0, hi0] = sigma.eigenvalues();
            const auto [lo1, hi1] = n.sigma_hat.eigenvalues();
            CHECK(hi1 / lo1 == doctest::Approx(hi0 / lo0).epsilon(1e-9));
        }
    }
    SUBCASE("non-positive trace is rejected") {
        CHECK_THROWS_AS(normalize_covariance({{0.0, 0.0, 0.0}, 0, 0}, 6.0), DegenerateCovariance);
    }
}

TEST_CASE("pixel correlation density") {
    const NormalizedCovariance iso{{18.0, 0.0, 18.0}, 6.0};
    SUBCASE("peak value at zero offset") {
        CHECK(pixel_correlation({7, 7}, {7, 7}, iso) ==
              doctest::Approx(0.008841941282883075).epsilon(1e-12));
    }
    SUBCASE("three-sigma Mahalanobis offset decays by exp(-4.5)") {
        // offset (9,9): (81+81)/18 = 9 = 3^2
        const double peak = pixel_correlation({0, 0}, {0, 0}, iso);
        CHECK(pixel_correlation({0, 0}, {9, 9}, iso) ==
              doctest::Approx(peak * std::exp(-4.5)).epsilon(1e-12));
    }
    SUBCASE("swapping the pixels changes nothing") {
        const NormalizedCovariance skew{{20.0, 5.0, 16.0}, 6.0};
        const PixelCoord m{3, 11}, n{9, 2};
        CHECK(pixel_correlation(m, n, skew) == pixel_correlation(n, m, skew));
    }
    SUBCASE("density decays strictly with Mahalanobis distance") {
        const NormalizedCovariance skew{{24.0, 6.0, 12.0}, 6.0};
        double last = pixel_correlation({0, 0}, {0, 0}, skew);
        for (int k = 1; k <= 6; ++k) {
            const double v = pixel_correlation({0, 0}, {k, k}, skew);
            CHECK(v < last);
            last = v;
        }
    }
}

TEST_CASE("kernel discretization") {
    const NormalizedCovariance iso{{18.0, 0.0, 18.0}, 6.0};
    SUBCASE("isotropic 18I gives a 27x27 kernel with near-unit mass") {
        const GaussianKernel k = build_kernel(iso);
        CHECK(k.half_rows() == 13);
        CHECK(k.half_cols() == 13);
        CHECK(k.rows() == 27);
        CHECK(k.sum() >= 0.99);
        CHECK(k.sum() <= 1.0);
        // numeric summation oracle
        double direct = 0.0;
        for (int dr = -13; dr <= 13; ++dr)
            for (int dc = -13; dc <= 13; ++dc)
                direct += pixel_correlation({0, 0}, {dr, dc}, iso);
        CHECK(k.sum() == doctest::Approx(direct).epsilon(1e-12));
    }
    SUBCASE("weights match the density at each offset") {
        const GaussianKernel k = build_kernel(iso);
        CHECK(k.weight(0, 0) == pixel_correlation({0, 0}, {0, 0}, iso));
        CHECK(k.weight(3, -5) == pixel_correlation({0, 0}, {3, -5}, iso));
    }
    SUBCASE("isotropic kernel is invariant under quarter turns") {
        const GaussianKernel k = build_kernel(iso);
        for (int dr = -13; dr <= 13; ++dr)
            for (int dc = -13; dc <= 13; ++dc) CHECK(k.weight(dr, dc) == k.weight(-dc, dr));
    }
    SUBCASE("weights fall monotonically along rays for diagonal covariance") {
        const GaussianKernel k = build_kernel(NormalizedCovariance{{27.0, 0.0, 9.0}, 6.0});
        for (int dr = 0; dr + 1 <= k.half_rows(); ++dr)
            CHECK(k.weight(dr + 1, 0) <= k.weight(dr, 0));
        for (int dc = 0; dc + 1 <= k.half_cols(); ++dc)
            CHECK(k.weight(0, dc + 1) <= k.weight(0, dc));
        for (int d = 0; d + 1 <= k.half_rows(); ++d)
            CHECK(k.weight(d + 1, d + 1) <= k.weight(d, d));
    }
    SUBCASE("degenerate thin shapes clamp to exactly unit mass") {
        // 1-pixel-thick line: the discrete sum far exceeds 1 before clamping
        std::vector<PixelCoord> fg;
        for (int c = 0; c < 30; ++c) fg.push_back({0, c});
        const auto cov = normalize_covariance(estimate_covariance(fg), 6.0);
        const GaussianKernel k = build_kernel(cov);
        CHECK(k.sum() <= 1.0);
        CHECK(k.sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
    SUBCASE("pathological extent trips the guard") {
        CHECK_THROWS_AS(build_kernel(NormalizedCovariance{{1e6, 0.0, 1e6}, 1000.0}, 64),
                        KernelTooLarge);
    }
}

TEST_CASE("convolution equals the truncated double sum") {
    SUBCASE("all-zero map convolves to zero") {
        const GaussianKernel k = build_kernel(NormalizedCovariance{{18.0, 0.0, 18.0}, 6.0});
        const GrayMap out = convolve(GrayMap(20, 16), k);
        for (double v : out.values()) CHECK(v == 0.0);
    }
    SUBCASE("impulse response reproduces the kernel") {
        const GaussianKernel k = build_kernel(NormalizedCovariance{{18.0, 0.0, 18.0}, 6.0});
        GrayMap delta(64, 64);
        delta.set(32, 32, 1.0);
        const GrayMap out = convolve(delta, k);
        for (int dr = -k.half_rows(); dr <= k.half_rows(); ++dr)
            for (int dc = -k.half_cols(); dc <= k.half_cols(); ++dc)
                CHECK(out.at(32 + dr, 32 + dc) == k.weight(dr, dc));
        CHECK(out.at(0, 0) == 0.0);
    }
    SUBCASE("random maps match the double-sum oracle to 1e-10") {
        std::mt19937_64 rng(17);
        double worst = 0.0;
        for (int trial = 0; trial < 8; ++trial) {
            const int w = 17 + static_cast<int>(rng() % 32);
            const int h = 17 + static_cast<int>(rng() % 32);
            const GrayMap x = random_gray(w, h, rng);
            const BinaryMask blob = random_blob(w, h, rng);
            const auto cov =
                normalize_covariance(estimate_covariance(foreground_pixels(blob)), 6.0);
            const GaussianKernel k = build_kernel(cov);
            if (k.sum() >= 1.0) continue;  // clamped kernels have their own test
            const GrayMap out = convolve(x, k);
            for (int r = 0; r < h; ++r)
                for (int c = 0; c < w; ++c)
                    worst = std::max(worst,
                                     std::abs(out.at(r, c) - smoothed_at(x, cov, k, r, c)));
        }
        CHECK(worst <= 1e-10);
    }
}

TEST_SUITE_END();
