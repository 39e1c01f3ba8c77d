#pragma once

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <string>

#include "omnirep/config.hpp"
#include "omnirep/genome.hpp"
#include "omnirep/imaging.hpp"
#include "omnirep/image.hpp"
#include "omnirep/random.hpp"

namespace omnirep::fixtures {

inline Palette four_colors() { return Palette({{20, 30, 40}, {230, 40, 40}, {40, 200, 60}, {250, 240, 220}}); }

/// Deterministic synthetic inspiration image: sky gradient, sun, hills and a dark tree.
inline RgbImage landscape(int w, int h) {
    RgbImage img(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            const double u = double(x) / w, v = double(y) / h;
            Rgb c{std::uint8_t(90 + 100 * v), std::uint8_t(150 + 60 * v), 235};
            const double sun = std::hypot(u - 0.72, v - 0.25);
            if (sun < 0.13) c = {250, 215, 70};
            const double hill = 0.62 + 0.08 * std::sin(u * 6.3);
            if (v > hill) c = {std::uint8_t(60 + 40 * u), 140, 55};
            if (std::abs(u - 0.28) < 0.035 && v > 0.45 && v < 0.8) c = {70, 45, 25};
            if (std::hypot(u - 0.28, v - 0.42) < 0.12) c = {30, 90, 35};
            img.at(x, y) = c;
        }
    return img;
}

inline RgbImage random_rgb(int w, int h, Rng& rng) {
    RgbImage img(w, h);
    for (auto& p : img.pixels) p = {std::uint8_t(rng.below(256)), std::uint8_t(rng.below(256)), std::uint8_t(rng.below(256))};
    return img;
}

inline PalettedImage random_paletted(int w, int h, int k, Rng& rng) {
    std::vector<Rgb> colors;
    while (int(colors.size()) < k) {
        Rgb c{std::uint8_t(rng.below(256)), std::uint8_t(rng.below(256)), std::uint8_t(rng.below(256))};
        if (std::find(colors.begin(), colors.end(), c) == colors.end()) colors.push_back(c);
    }
    PalettedImage img(w, h, Palette(colors));
    for (auto& i : img.indices) i = std::uint8_t(rng.below(std::uint64_t(k)));
    return img;
}

/// Small genome limits for property tests over random canvases.
inline GenomeLimits small_limits(int w, int h, Rng& rng) {
    GenomeLimits l;
    l.width = w;
    l.height = h;
    l.n_chunks = int(rng.between(2, 20));
    l.chunk_len_min = int(rng.between(1, 4));
    l.chunk_len_max = l.chunk_len_min + int(rng.between(0, 12));
    l.n_polygons = int(rng.between(2, 6));
    l.sides_min = 3;
    l.sides_max = int(rng.between(3, 6));
    l.n_circles = int(rng.between(2, 20));
    l.radius_min = int(rng.between(0, 3));
    l.radius_max = l.radius_min + int(rng.between(0, 12));
    return l;
}

/// Published parameters with genome sizes scaled down so short runs stay fast.
inline RunConfig small_run(SetupKind setup, int generations, std::uint64_t seed = 1) {
    RunConfig cfg = default_config(setup);
    cfg.generations = generations;
    cfg.seed = seed;
    cfg.snapshot_every = 10;
    cfg.limits.n_chunks = 120;
    cfg.limits.n_polygons = 8;
    cfg.limits.sides_max = 6;
    cfg.limits.n_circles = 12;
    cfg.limits.radius_min = 1;
    cfg.limits.radius_max = 8;
    return cfg;
}

inline PalettedImage landscape_target(int w, int h, int colors = 4) { return quantize(landscape(w, h), colors); }

/// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("omnirep_test_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace omnirep::fixtures
