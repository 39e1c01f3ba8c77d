#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace omnirep {

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
    friend auto operator<=>(const Rgb&, const Rgb&) = default;
};

/// Squared Euclidean distance in 8-bit RGB space.
constexpr int squared_distance(Rgb a, Rgb b) {
    const int dr = int(a.r) - int(b.r);
    const int dg = int(a.g) - int(b.g);
    const int db = int(a.b) - int(b.b);
    return dr * dr + dg * dg + db * db;
}

class ImageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Row-major 8-bit RGB image.
struct RgbImage {
    int width = 0;
    int height = 0;
    std::vector<Rgb> pixels;

    RgbImage() = default;
    RgbImage(int w, int h, Rgb fill = {});
    RgbImage(int w, int h, std::vector<Rgb> px);

    std::size_t size() const { return pixels.size(); }
    Rgb& at(int x, int y) { return pixels[std::size_t(y) * std::size_t(width) + std::size_t(x)]; }
    const Rgb& at(int x, int y) const { return pixels[std::size_t(y) * std::size_t(width) + std::size_t(x)]; }

    friend bool operator==(const RgbImage&, const RgbImage&) = default;
};

/// Ordered set of distinct colors. Entry 0 is the base color painted under every
/// pixel that no shape covers.
class Palette {
public:
    Palette() = default;
    explicit Palette(std::vector<Rgb> colors);

    std::size_t size() const { return colors_.size(); }
    const Rgb& operator[](std::size_t i) const { return colors_[i]; }
    const std::vector<Rgb>& colors() const { return colors_; }

    /// Index of the nearest entry under squared RGB distance; ties go to the lowest index.
    std::uint8_t nearest(Rgb c) const;

    friend bool operator==(const Palette&, const Palette&) = default;

private:
    std::vector<Rgb> colors_;
};

/// Row-major grid of palette indices.
struct PalettedImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> indices;
    Palette palette;

    PalettedImage() = default;
    PalettedImage(int w, int h, Palette pal, std::uint8_t fill = 0);

    std::size_t size() const { return indices.size(); }
    std::uint8_t& at(int x, int y) { return indices[std::size_t(y) * std::size_t(width) + std::size_t(x)]; }
    std::uint8_t at(int x, int y) const { return indices[std::size_t(y) * std::size_t(width) + std::size_t(x)]; }

    RgbImage to_rgb() const;

    /// Throws ImageError if any index falls outside the palette or the buffer size is wrong.
    void validate() const;

    friend bool operator==(const PalettedImage&, const PalettedImage&) = default;
};

}  // namespace omnirep
