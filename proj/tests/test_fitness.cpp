#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "omnirep/fitness.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace omnirep;

TEST_CASE("identical images score zero") {
    Rng rng(1);
    const auto img = fixtures::random_paletted(9, 7, 4, rng);
    CHECK(mae(img, img) == 0.0);
    CHECK(mae(img, img, ErrorSpace::Index) == 0.0);
}

TEST_CASE("black against white is the maximum") {
    const PalettedImage black(3, 2, Palette({{0, 0, 0}}));
    const PalettedImage white(3, 2, Palette({{255, 255, 255}}));
    CHECK(mae(black, white) == 255.0);
}

TEST_CASE("single red channel difference of 10 on a 2x1 image") {
    PalettedImage a(2, 1, Palette({{100, 50, 50}, {110, 50, 50}}));
    PalettedImage b = a;
    b.indices[1] = 1;
    CHECK(mae(a, b) == doctest::Approx(10.0 / 6.0).epsilon(1e-15));
}

TEST_CASE("colors resolve through each image's own palette") {
    // same indices, different palettes: the error is non-zero
    const PalettedImage a(2, 2, Palette({{0, 0, 0}, {9, 9, 9}}));
    const PalettedImage b(2, 2, Palette({{30, 0, 0}, {9, 9, 9}}));
    CHECK(mae(a, b) == 10.0);
    CHECK(mae(a, b, ErrorSpace::Index) == 0.0);
    // different indices, same colors: zero in RGB
    PalettedImage c(2, 2, Palette({{9, 9, 9}, {0, 0, 0}}), 1);
    CHECK(mae(a, c) == 0.0);
    CHECK(mae(a, c, ErrorSpace::Index) == 1.0);
}

TEST_CASE("matches a naive floating-point reference on random pairs") {
    Rng rng(42);
    for (int t = 0; t < 1000; ++t) {
        const int w = int(rng.between(1, 24)), h = int(rng.between(1, 24));
        const auto a = fixtures::random_paletted(w, h, int(rng.between(1, 16)), rng);
        const auto b = fixtures::random_paletted(w, h, int(rng.between(1, 16)), rng);
        const double got = mae(a, b), want = oracle::naive_mae(a, b);
        REQUIRE(std::abs(got - want) <= 1e-9 * std::max(1.0, want));
        CHECK(got >= 0.0);
        CHECK(got <= 255.0);
    }
}

TEST_CASE("symmetry and triangle inequality") {
    Rng rng(7);
    for (int t = 0; t < 300; ++t) {
        const int w = int(rng.between(1, 12)), h = int(rng.between(1, 12));
        const auto a = fixtures::random_paletted(w, h, 4, rng);
        const auto b = fixtures::random_paletted(w, h, 4, rng);
        const auto c = fixtures::random_paletted(w, h, 4, rng);
        CHECK(mae(a, b) == mae(b, a));
        CHECK(mae(a, c) <= mae(a, b) + mae(b, c) + 1e-12);
    }
}

TEST_CASE("dimension mismatch is an error") {
    const PalettedImage a(4, 4, fixtures::four_colors()), b(4, 5, fixtures::four_colors()), c(5, 4, fixtures::four_colors());
    CHECK_THROWS_AS(mae(a, b), FitnessError);
    CHECK_THROWS_AS(mae(a, c), FitnessError);
}

TEST_CASE("error space names") {
    CHECK(parse_error_space("rgb") == ErrorSpace::Rgb);
    CHECK(parse_error_space("index") == ErrorSpace::Index);
    CHECK(to_string(ErrorSpace::Index) == "index");
    CHECK_THROWS(parse_error_space("lab"));
}
