#include <doctest.h>

#include <cmath>
#include <random>

#include "camoeval/baselines.hpp"
#include "camoeval/context_measure.hpp"
#include "fixtures.hpp"

using namespace camoeval;
using namespace camoeval::testing;

TEST_SUITE_BEGIN("cmeasure");

namespace {

constexpr double kE = 2.718281828459045235360287;

struct Model {
    NormalizedCovariance cov;
    GaussianKernel kernel;
};

Model model_for(const BinaryMask& y, double alpha = 6.0) {
    const auto cov = normalize_covariance(estimate_covariance(foreground_pixels(y)), alpha);
    return {cov, build_kernel(cov)};
}

// Direct re-evaluation of the forward field from the density, kernel support
// only: X(p) * sum_q P(p, q) over GT foreground q.
double forward_oracle_at(const GrayMap& x, const BinaryMask& y, const Model& m, int r, int c) {
    if (x.at(r, c) == 0.0) return 0.0;
    double acc = 0.0;
    for (int dr = -m.kernel.half_rows(); dr <= m.kernel.half_rows(); ++dr)
        for (int dc = -m.kernel.half_cols(); dc <= m.kernel.half_cols(); ++dc) {
            const int rr = r + dr, cc = c + dc;
            if (rr < 0 || rr >= y.height() || cc < 0 || cc >= y.width() || !y.at(rr, cc)) continue;
            acc += pixel_correlation({r, c}, {rr, cc}, m.cov);
        }
    return x.at(r, c) * acc;
}

}  // namespace

TEST_CASE("forward inference") {
    SUBCASE("empty prediction produces an empty field") {
        const BinaryMask y = disk_mask(32, 32, 16, 16, 6);
        const Model m = model_for(y);
        const GrayMap f = forward_inference(GrayMap(32, 32), y, m.kernel);
        CHECK(f.l1() == 0.0);
    }
    SUBCASE("prediction beyond kernel reach earns nothing") {
        // GT in one corner, prediction in the other, 96px apart, reach <= 18
        const BinaryMask y = rect_mask(128, 128, 4, 4, 8, 8);
        GrayMap x(128, 128);
        for (int r = 110; r < 124; ++r)
            for (int c = 110; c < 124; ++c) x.set(r, c, 1.0);
        const Model m = model_for(y);
        const GrayMap f = forward_inference(x, y, m.kernel);
        CHECK(f.l1() == 0.0);
    }
    SUBCASE("random pair matches the double-sum oracle") {
        std::mt19937_64 rng(31);
        const BinaryMask y = random_blob(24, 24, rng);
        const GrayMap x = random_gray(24, 24, rng);
        const Model m = model_for(y);
        const GrayMap f = forward_inference(x, y, m.kernel);
        double worst = 0.0;
        for (int r = 0; r < 24; ++r)
            for (int c = 0; c < 24; ++c)
                worst = std::max(worst, std::abs(f.at(r, c) - forward_oracle_at(x, y, m, r, c)));
        CHECK(worst <= 1e-10);
    }
    SUBCASE("field never exceeds the prediction") {
        std::mt19937_64 rng(37);
        const BinaryMask y = random_blob(20, 20, rng);
        const GrayMap x = random_gray(20, 20, rng);
        const Model m = model_for(y);
        const GrayMap f = forward_inference(x, y, m.kernel);
        for (int r = 0; r < 20; ++r)
            for (int c = 0; c < 20; ++c) CHECK(f.at(r, c) <= x.at(r, c));
    }
    SUBCASE("dimension mismatch is rejected") {
        const BinaryMask y = disk_mask(16, 16, 8, 8, 4);
        const Model m = model_for(y);
        CHECK_THROWS_AS(forward_inference(GrayMap(17, 16), y, m.kernel), DimensionMismatch);
    }
}

TEST_CASE("exact reverse field") {
    SUBCASE("empty prediction leaves the empty product") {
        const BinaryMask y = disk_mask(16, 16, 8, 8, 4);
        const Model m = model_for(y);
        CHECK(reverse_exact(GrayMap(16, 16), y, m.cov).l1() == 0.0);
    }
    SUBCASE("single full-confidence pixel reduces to one correlation term") {
        const BinaryMask y = disk_mask(24, 24, 12, 12, 5);
        GrayMap x(24, 24);
        x.set(10, 14, 1.0);
        const Model m = model_for(y);
        const GrayMap r = reverse_exact(x, y, m.cov);
        for (int rr = 0; rr < 24; ++rr)
            for (int cc = 0; cc < 24; ++cc) {
                if (!y.at(rr, cc)) {
                    CHECK(r.at(rr, cc) == 0.0);
                } else {
                    CHECK(r.at(rr, cc) ==
                          doctest::Approx(pixel_correlation({10, 14}, {rr, cc}, m.cov))
                              .epsilon(1e-12));
                }
            }
    }
    SUBCASE("log-space product oracle") {
        std::mt19937_64 rng(41);
        const BinaryMask y = random_blob(16, 16, rng);
        const GrayMap x = random_gray(16, 16, rng);
        const Model m = model_for(y);
        const GrayMap r = reverse_exact(x, y, m.cov);
        double worst = 0.0;
        for (int rr = 0; rr < 16; ++rr)
            for (int cc = 0; cc < 16; ++cc) {
                if (!y.at(rr, cc)) continue;
                double log_prod = 0.0;
                for (int pr = 0; pr < 16; ++pr)
                    for (int pc = 0; pc < 16; ++pc) {
                        if (x.at(pr, pc) == 0.0) continue;
                        log_prod += std::log1p(-x.at(pr, pc) *
                                               pixel_correlation({pr, pc}, {rr, cc}, m.cov));
                    }
                worst = std::max(worst, std::abs(r.at(rr, cc) - (1.0 - std::exp(log_prod))));
            }
        CHECK(worst <= 1e-12);
    }
}

TEST_CASE("approximated reverse field") {
    SUBCASE("empty prediction gives zero everywhere") {
        const BinaryMask y = disk_mask(16, 16, 8, 8, 4);
        const Model m = model_for(y);
        CHECK(reverse_deduction(GrayMap(16, 16), y, m.kernel).l1() == 0.0);
    }
    SUBCASE("saturated smoothed prediction hits the normalization endpoint") {
        // Thin-line GT clamps the kernel mass to exactly 1; an all-ones
        // prediction then saturates the exponent at interior GT pixels.
        BinaryMask y(64, 64);
        for (int c = 10; c < 54; ++c) y.set(32, c, true);
        const Model m = model_for(y);
        REQUIRE(m.kernel.sum() == doctest::Approx(1.0).epsilon(1e-12));
        const GrayMap r = reverse_deduction(GrayMap(64, 64, 1.0), y, m.kernel);
        CHECK(r.at(32, 32) == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("zero off the GT foreground and within [0,1]") {
        std::mt19937_64 rng(43);
        const BinaryMask y = random_blob(20, 20, rng);
        const GrayMap x = random_gray(20, 20, rng);
        const Model m = model_for(y);
        const GrayMap r = reverse_deduction(x, y, m.kernel);
        for (int rr = 0; rr < 20; ++rr)
            for (int cc = 0; cc < 20; ++cc) {
                if (!y.at(rr, cc)) CHECK(r.at(rr, cc) == 0.0);
                CHECK(r.at(rr, cc) >= 0.0);
                CHECK(r.at(rr, cc) <= 1.0);
            }
    }
    SUBCASE("sparse low-confidence inputs track the exact product") {
        std::mt19937_64 rng(47);
        std::uniform_real_distribution<double> u(0.0, 0.1);
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            const BinaryMask y = random_blob(24, 24, rng);
            GrayMap x(24, 24);
            for (int i = 0; i < 6; ++i)
                x.set(static_cast<int>(rng() % 24), static_cast<int>(rng() % 24), u(rng));
            const Model m = model_for(y);
            const GrayMap approx = reverse_deduction(x, y, m.kernel);
            const GrayMap exact = reverse_exact(x, y, m.cov);
            for (size_t i = 0; i < approx.values().size(); ++i)
                worst = std::max(worst, std::abs(approx.values()[i] -
                                                 kE / (kE - 1.0) * exact.values()[i]));
        }
        CHECK(worst <= 1e-3);
    }
}

TEST_CASE("context measure") {
    SUBCASE("empty ground truth is an error") {
        CHECK_THROWS_AS(context_measure(GrayMap(8, 8, 0.5), BinaryMask(8, 8)), EmptyGroundTruth);
    }
    SUBCASE("empty prediction scores zero") {
        const BinaryMask y = disk_mask(32, 32, 16, 16, 6);
        CHECK(context_measure(GrayMap(32, 32), y) == 0.0);
    }
    SUBCASE("far-miss scores zero") {
        const BinaryMask y = rect_mask(128, 128, 4, 4, 8, 8);
        GrayMap x(128, 128);
        for (int r = 110; r < 124; ++r)
            for (int c = 110; c < 124; ++c) x.set(r, c, 1.0);
        CHECK(context_measure(x, y) == 0.0);
    }
    SUBCASE("radius-8 disk regression value") {
        const BinaryMask y = disk_mask(64, 64, 31.5, 31.5, 8.0);
        REQUIRE(y.count() == 208);
        const double score = context_measure(y.to_gray(), y, {6.0, 1.0});
        CHECK(score == doctest::Approx(0.6485257865831455).epsilon(1e-9));
    }
    SUBCASE("halving the prediction strictly lowers the score") {
        std::mt19937_64 rng(53);
        for (int trial = 0; trial < 5; ++trial) {
            const BinaryMask y = random_blob(32, 32, rng);
            GrayMap x = random_gray(32, 32, rng);
            const double full = context_measure(x, y);
            std::vector<double> halved = x.values();
            for (double& v : halved) v *= 0.5;
            const double half =
                context_measure(GrayMap::from_values(32, 32, std::move(halved)), y);
            CHECK(half < full);
        }
    }
    SUBCASE("mirroring both maps leaves the score unchanged") {
        std::mt19937_64 rng(59);
        for (int trial = 0; trial < 5; ++trial) {
            const BinaryMask y = random_blob(32, 32, rng);
            const GrayMap x = random_gray(32, 32, rng);
            const double orig = context_measure(x, y);
            const double flipped = context_measure(hflip(x), hflip(y));
            CHECK(flipped == doctest::Approx(orig).epsilon(1e-12));
        }
    }
}

TEST_CASE("placement discrimination that the count-based metrics miss") {
    // Same GT, two predictions with identical per-quadrant confusion counts:
    // blocks adjacent to the object vs. blocks at the quadrant corners.
    const int w = 64, h = 64;
    const BinaryMask y = rect_mask(w, h, 24, 24, 16, 16);
    BinaryMask near_blocks(w, h), far_blocks(w, h);
    const int size = 8;
    const auto put = [size](BinaryMask& m, int r0, int c0) {
        for (int r = r0; r < r0 + size; ++r)
            for (int c = c0; c < c0 + size; ++c) m.set(r, c, true);
    };
    put(near_blocks, 14, 14);
    put(near_blocks, 14, 42);
    put(near_blocks, 42, 14);
    put(near_blocks, 42, 42);
    put(far_blocks, 2, 2);
    put(far_blocks, 2, 54);
    put(far_blocks, 54, 2);
    put(far_blocks, 54, 54);

    const double near_cb = context_measure(near_blocks.to_gray(), y);
    const double far_cb = context_measure(far_blocks.to_gray(), y);
    CHECK(std::abs(near_cb - far_cb) >= 1e-3);
    CHECK(near_cb > far_cb);

    CHECK(s_measure(near_blocks.to_gray(), y) ==
          doctest::Approx(s_measure(far_blocks.to_gray(), y)).epsilon(1e-12));
    CHECK(e_measure(near_blocks, y) == doctest::Approx(e_measure(far_blocks, y)).epsilon(1e-12));
}

TEST_CASE("camouflage-weighted measure") {
    const BinaryMask y = disk_mask(48, 48, 24, 24, 7);
    const GrayMap x = y.to_gray();
    SUBCASE("zero degree collapses to the generic measure") {
        const CamoMap d = CamoMap::zero(y);
        const CmParams p{6.0, 1.2};
        CHECK(context_measure_camo(x, y, d, p) ==
              doctest::Approx(context_measure(x, y, p)).epsilon(1e-15));
    }
    SUBCASE("uniform full degree also collapses (weights cancel)") {
        std::vector<double> ones(static_cast<size_t>(y.pixel_count()), 0.0);
        for (int r = 0; r < 48; ++r)
            for (int c = 0; c < 48; ++c)
                if (y.at(r, c)) ones[static_cast<size_t>(r) * 48 + c] = 1.0;
        const CamoMap d = CamoMap::from_values(y, std::move(ones));
        const CmParams p{6.0, 1.2};
        CHECK(context_measure_camo(x, y, d, p) ==
              doctest::Approx(context_measure(x, y, p)).epsilon(1e-12));
    }
    SUBCASE("degree concentrated on poorly covered pixels drags the score down") {
        // Two blobs; the prediction only covers the first. Weighting the
        // missed blob as highly camouflaged must lower the score.
        BinaryMask two(96, 96);
        for (int r = 0; r < 96; ++r)
            for (int c = 0; c < 96; ++c)
                if ((r - 24) * (r - 24) + (c - 24) * (c - 24) <= 49 ||
                    (r - 72) * (r - 72) + (c - 72) * (c - 72) <= 49)
                    two.set(r, c, true);
        BinaryMask covered_only(96, 96);
        for (int r = 0; r < 96; ++r)
            for (int c = 0; c < 96; ++c)
                if ((r - 24) * (r - 24) + (c - 24) * (c - 24) <= 49) covered_only.set(r, c, true);
        std::vector<double> d(static_cast<size_t>(96) * 96, 0.0);
        for (int r = 0; r < 96; ++r)
            for (int c = 0; c < 96; ++c)
                if ((r - 72) * (r - 72) + (c - 72) * (c - 72) <= 49)
                    d[static_cast<size_t>(r) * 96 + c] = 1.0;
        const CamoMap degree = CamoMap::from_values(two, std::move(d));
        const CmParams p{6.0, 1.2};
        const double weighted = context_measure_camo(covered_only.to_gray(), two, degree, p);
        const double base = context_measure(covered_only.to_gray(), two, p);
        CHECK(weighted < base);

        // direct formula evaluation of R_w from the loop terms
        const LoopTerms terms = compute_loop_terms(covered_only.to_gray(), two, p);
        double num = 0.0, den = 0.0;
        for (int r = 0; r < 96; ++r)
            for (int c = 0; c < 96; ++c) {
                if (!two.at(r, c)) continue;
                const double wgt = 1.0 + degree.at(r, c);
                num += terms.reverse_map.at(r, c) * wgt;
                den += wgt;
            }
        const double r_w = num / den;
        const double b2 = p.beta * p.beta;
        const double expect = (1.0 + b2) * terms.f_m * r_w / (b2 * terms.f_m + r_w);
        CHECK(weighted == doctest::Approx(expect).epsilon(1e-12));
    }
    SUBCASE("degree defined against a different mask is rejected") {
        const BinaryMask other = disk_mask(48, 48, 10, 10, 3);
        std::vector<double> d(static_cast<size_t>(48) * 48, 0.0);
        d[10 * 48 + 10] = 0.5;
        const CamoMap degree = CamoMap::from_values(other, std::move(d));
        CHECK_THROWS_AS(context_measure_camo(x, y, degree, {6.0, 1.2}), Error);
    }
}

TEST_SUITE_END();
