#include <doctest.h>

#include <random>

#include "camoeval/raster.hpp"
#include "fixtures.hpp"

using namespace camoeval;
using namespace camoeval::testing;

TEST_SUITE_BEGIN("raster");

TEST_CASE("graymap rejects out-of-range values and bad dims") {
    CHECK_THROWS_AS(GrayMap::from_values(2, 2, {0.0, 0.5, 1.0, 1.5}), Error);
    CHECK_THROWS_AS(GrayMap::from_values(2, 2, {0.0, 0.5, 1.0}), Error);
    CHECK_THROWS_AS(GrayMap(0, 3), Error);
    CHECK_THROWS_AS(BinaryMask::from_values(2, 1, {0, 2}), Error);
}

TEST_CASE("adaptive binarization threshold rule") {
    SUBCASE("constant 0.4 map binarizes to all-zero (tau = 0.8)") {
        const GrayMap x(10, 10, 0.4);
        CHECK(binarize_adaptive(x).count() == 0);
    }
    SUBCASE("single bright pixel in a zero map survives (tau = 0.02)") {
        GrayMap x(10, 10, 0.0);
        x.set(3, 7, 1.0);
        const BinaryMask m = binarize_adaptive(x);
        CHECK(m.count() == 1);
        CHECK(m.at(3, 7));
    }
    SUBCASE("all-ones map stays all-ones (tau clipped below 1)") {
        const GrayMap x(6, 4, 1.0);
        CHECK(binarize_adaptive(x).count() == 24);
    }
    SUBCASE("all-zero map binarizes to all-zero") {
        const GrayMap x(5, 5, 0.0);
        CHECK(binarize_adaptive(x).count() == 0);
    }
}

TEST_CASE("raising a pixel never unsets that pixel") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        GrayMap x = random_gray(8, 8, rng);
        const BinaryMask before = binarize_adaptive(x);
        const int r = static_cast<int>(rng() % 8), c = static_cast<int>(rng() % 8);
        x.set(r, c, std::min(1.0, x.at(r, c) + u(rng)));
        const BinaryMask after = binarize_adaptive(x);
        if (before.at(r, c)) CHECK(after.at(r, c));
    }
}

TEST_CASE("foreground coordinates in row-major order") {
    CHECK(foreground_pixels(BinaryMask(3, 3)).empty());

    const BinaryMask ones(2, 2, true);
    const std::vector<PixelCoord> want{{0, 0}, {0, 1}, {1, 0}, {1, 1}};
    CHECK(foreground_pixels(ones) == want);

    const BinaryMask checker = mask_from_art("#.#.\n"
                                             ".#.#\n"
                                             "#.#.\n"
                                             ".#.#");
    const std::vector<PixelCoord> expected{{0, 0}, {0, 2}, {1, 1}, {1, 3},
                                           {2, 0}, {2, 2}, {3, 1}, {3, 3}};
    CHECK(foreground_pixels(checker) == expected);
}

TEST_CASE("morphology on hand instances") {
    CHECK(morph(BinaryMask(6, 6), MorphOp::Dilate, 1).count() == 0);

    BinaryMask lone(7, 7);
    lone.set(3, 3, true);
    CHECK(morph(lone, MorphOp::Erode, 1).count() == 0);

    BinaryMask center(5, 5);
    center.set(2, 2, true);
    const BinaryMask dil = morph(center, MorphOp::Dilate, 1);
    CHECK(dil == rect_mask(5, 5, 1, 1, 3, 3));
}

TEST_CASE("erosion and dilation bracket the mask") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const BinaryMask y = random_blob(24, 24, rng);
        const BinaryMask er = morph(y, MorphOp::Erode, 1);
        const BinaryMask di = morph(y, MorphOp::Dilate, 1);
        for (int r = 0; r < 24; ++r)
            for (int c = 0; c < 24; ++c) {
                if (er.at(r, c)) CHECK(y.at(r, c));
                if (y.at(r, c)) CHECK(di.at(r, c));
            }
    }
}

TEST_CASE("dilation is open under the same element away from borders") {
    // dilate(erode(dilate(Y))) == dilate(Y); needs margin so zero padding
    // does not clip the eroded support.
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 25; ++trial) {
        const BinaryMask y = random_blob(32, 32, rng, /*margin=*/4);
        const BinaryMask d = morph(y, MorphOp::Dilate, 1);
        CHECK(morph(morph(d, MorphOp::Erode, 1), MorphOp::Dilate, 1) == d);
    }
}

TEST_SUITE_END();
