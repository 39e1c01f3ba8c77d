#include "omnirep/image.hpp"

#include <algorithm>

namespace omnirep {

namespace {

void check_dims(int w, int h) {
    if (w <= 0 || h <= 0)
        throw ImageError("image dimensions must be positive, got " + std::to_string(w) + "x" +
                         std::to_string(h));
}

}  // namespace

RgbImage::RgbImage(int w, int h, Rgb fill) : width(w), height(h) {
    check_dims(w, h);
    pixels.assign(std::size_t(w) * std::size_t(h), fill);
}

RgbImage::RgbImage(int w, int h, std::vector<Rgb> px) : width(w), height(h), pixels(std::move(px)) {
    check_dims(w, h);
    if (pixels.size() != std::size_t(w) * std::size_t(h))
        throw ImageError("pixel buffer length does not match width*height");
}

Palette::Palette(std::vector<Rgb> colors) : colors_(std::move(colors)) {
    if (colors_.empty())
        throw ImageError("palette must hold at least one color");
    if (colors_.size() > 256)
        throw ImageError("palette may hold at most 256 colors");
    auto sorted = colors_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw ImageError("palette colors must be pairwise distinct");
}

std::uint8_t Palette::nearest(Rgb c) const {
    std::size_t best = 0;
    int best_d = squared_distance(c, colors_[0]);
    for (std::size_t i = 1; i < colors_.size(); ++i) {
        const int d = squared_distance(c, colors_[i]);
        if (d < best_d) {
            best_d = d;
            best = i;
        }
    }
    return static_cast<std::uint8_t>(best);
}

PalettedImage::PalettedImage(int w, int h, Palette pal, std::uint8_t fill)
    : width(w), height(h), palette(std::move(pal)) {
    check_dims(w, h);
    indices.assign(std::size_t(w) * std::size_t(h), fill);
}

RgbImage PalettedImage::to_rgb() const {
    std::vector<Rgb> px;
    px.reserve(indices.size());
    for (auto i : indices) px.push_back(palette[i]);
    return RgbImage(width, height, std::move(px));
}

void PalettedImage::validate() const {
    check_dims(width, height);
    if (indices.size() != std::size_t(width) * std::size_t(height))
        throw ImageError("index buffer length does not match width*height");
    if (palette.size() == 0)
        throw ImageError("paletted image has an empty palette");
    for (auto i : indices)
        if (i >= palette.size())
            throw ImageError("palette index " + std::to_string(i) + " out of range");
}

}  // namespace omnirep
