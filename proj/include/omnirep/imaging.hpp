#pragma once

#include <filesystem>
#include <span>

#include "omnirep/image.hpp"

namespace omnirep {

// PNG input/output. Errors surface as ImageError (decode problems) or
// std::filesystem::filesystem_error / ImageError for missing files and I/O failures.

class FileNotFound : public ImageError {
public:
    using ImageError::ImageError;
};

/// Decodes any PNG color type to 8-bit RGB. Alpha is dropped, not composited.
RgbImage load_image(const std::filesystem::path& path);

/// Reads an indexed-color PNG keeping its indices and PLTE entries as stored.
PalettedImage load_paletted_png(const std::filesystem::path& path);

void save_png(const RgbImage& img, const std::filesystem::path& path);

/// Writes an indexed-color PNG (color type 3, 8 bits per index).
void save_png(const PalettedImage& img, const std::filesystem::path& path);

/// Median-cut palette of at most `k` colors, refined with Lloyd iterations, then
/// nearest-color mapping (no dithering). The most frequent color ends up at index 0.
PalettedImage quantize(const RgbImage& img, int k);

/// GIF89a animation looping forever. Every frame must share dimensions; each
/// frame's palette goes into a local color table.
void assemble_gif(std::span<const PalettedImage> frames, const std::filesystem::path& path,
                  int frame_delay_cs);

/// Encodes the same stream assemble_gif writes, in memory.
std::vector<std::uint8_t> encode_gif(std::span<const PalettedImage> frames, int frame_delay_cs);

}  // namespace omnirep
