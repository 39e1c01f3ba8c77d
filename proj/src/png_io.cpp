#include <csetjmp>
#include <cstdio>
#include <memory>

#include <png.h>

#include "omnirep/imaging.hpp"

namespace omnirep {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open_for_read(const std::filesystem::path& path) {
    std::error_code ec;
    if (!std::filesystem::exists(path, ec))
        throw FileNotFound("file not found: " + path.string());
    File f(std::fopen(path.c_str(), "rb"));
    if (!f) throw ImageError("cannot open " + path.string() + " for reading");
    unsigned char sig[8] = {};
    if (std::fread(sig, 1, 8, f.get()) != 8 || png_sig_cmp(sig, 0, 8) != 0)
        throw ImageError("not a PNG file: " + path.string());
    return f;
}

File open_for_write(const std::filesystem::path& path) {
    File f(std::fopen(path.c_str(), "wb"));
    if (!f) throw ImageError("cannot open " + path.string() + " for writing");
    return f;
}

void warn_silently(png_structp, png_const_charp) {}

// Everything libpng touches after setjmp lives on the heap so longjmp cannot leave
// stale register copies behind.
struct Decoded {
    png_uint_32 width = 0;
    png_uint_32 height = 0;
    int color_type = 0;
    std::vector<png_byte> data;
    std::vector<png_bytep> rows;
    std::vector<Rgb> plte;
};

enum class Mode { Rgb, Indexed };

std::unique_ptr<Decoded> decode(std::FILE* fp, Mode mode) {
    auto out = std::make_unique<Decoded>();
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, warn_silently);
    if (!png) throw ImageError("png_create_read_struct failed");
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_read_struct(&png, nullptr, nullptr);
        throw ImageError("png_create_info_struct failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        return nullptr;
    }
    png_init_io(png, fp);
    png_set_sig_bytes(png, 8);
    png_read_info(png, info);

    int bit_depth = 0;
    png_get_IHDR(png, info, &out->width, &out->height, &bit_depth, &out->color_type, nullptr,
                 nullptr, nullptr);
    std::size_t channels = 3;
    if (mode == Mode::Rgb) {
        if (out->color_type == PNG_COLOR_TYPE_PALETTE) png_set_palette_to_rgb(png);
        if (out->color_type == PNG_COLOR_TYPE_GRAY && bit_depth < 8) png_set_expand_gray_1_2_4_to_8(png);
        if (bit_depth == 16) png_set_strip_16(png);
        if (out->color_type == PNG_COLOR_TYPE_GRAY || out->color_type == PNG_COLOR_TYPE_GRAY_ALPHA)
            png_set_gray_to_rgb(png);
        // tRNS expands to a real alpha channel, which is then stripped with the rest.
        if (png_get_valid(png, info, PNG_INFO_tRNS)) png_set_tRNS_to_alpha(png);
        png_set_strip_alpha(png);
    } else {
        if (out->color_type != PNG_COLOR_TYPE_PALETTE) {
            png_destroy_read_struct(&png, &info, nullptr);
            return nullptr;
        }
        png_set_packing(png);
        channels = 1;
        png_colorp colors = nullptr;
        int n = 0;
        if (png_get_PLTE(png, info, &colors, &n) == PNG_INFO_PLTE)
            for (int i = 0; i < n; ++i) out->plte.push_back({colors[i].red, colors[i].green, colors[i].blue});
    }
    png_set_interlace_handling(png);
    png_read_update_info(png, info);
    if (png_get_rowbytes(png, info) != out->width * channels) {
        png_destroy_read_struct(&png, &info, nullptr);
        return nullptr;
    }
    out->data.resize(std::size_t(out->width) * out->height * channels);
    out->rows.resize(out->height);
    for (png_uint_32 y = 0; y < out->height; ++y) out->rows[y] = out->data.data() + y * out->width * channels;
    png_read_image(png, out->rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);
    return out;
}

struct Encoded {
    std::vector<png_bytep> rows;
    std::vector<png_color> plte;
};

bool encode(std::FILE* fp, int width, int height, const std::vector<Rgb>* palette, const png_byte* data,
            std::size_t row_bytes) {
    auto hold = std::make_unique<Encoded>();
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, warn_silently);
    if (!png) return false;
    png_infop info = png_create_info_struct(png);
    if (!info) {
        png_destroy_write_struct(&png, nullptr);
        return false;
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        return false;
    }
    png_init_io(png, fp);
    const int color_type = palette ? PNG_COLOR_TYPE_PALETTE : PNG_COLOR_TYPE_RGB;
    png_set_IHDR(png, info, png_uint_32(width), png_uint_32(height), 8, color_type, PNG_INTERLACE_NONE,
                 PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
    if (palette) {
        for (const auto& c : *palette) hold->plte.push_back({c.r, c.g, c.b});
        png_set_PLTE(png, info, hold->plte.data(), int(hold->plte.size()));
    }
    png_write_info(png, info);
    hold->rows.resize(std::size_t(height));
    for (int y = 0; y < height; ++y) hold->rows[std::size_t(y)] = const_cast<png_bytep>(data + std::size_t(y) * row_bytes);
    png_write_image(png, hold->rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
    return true;
}

void finish_write(File f, const std::filesystem::path& path, bool ok) {
    if (std::fflush(f.get()) != 0 || std::ferror(f.get())) ok = false;
    if (std::fclose(f.release()) != 0) ok = false;
    if (!ok) throw ImageError("failed writing PNG " + path.string());
}

}  // namespace

RgbImage load_image(const std::filesystem::path& path) {
    auto f = open_for_read(path);
    auto d = decode(f.get(), Mode::Rgb);
    if (!d) throw ImageError("failed decoding PNG " + path.string());
    std::vector<Rgb> px(std::size_t(d->width) * d->height);
    for (std::size_t i = 0; i < px.size(); ++i)
        px[i] = {d->data[3 * i], d->data[3 * i + 1], d->data[3 * i + 2]};
    return RgbImage(int(d->width), int(d->height), std::move(px));
}

PalettedImage load_paletted_png(const std::filesystem::path& path) {
    auto f = open_for_read(path);
    auto d = decode(f.get(), Mode::Indexed);
    if (!d) throw ImageError("failed decoding indexed-color PNG " + path.string());
    PalettedImage img(int(d->width), int(d->height), Palette(std::move(d->plte)));
    img.indices.assign(d->data.begin(), d->data.end());
    img.validate();
    return img;
}

void save_png(const RgbImage& img, const std::filesystem::path& path) {
    std::vector<png_byte> data;
    data.reserve(img.size() * 3);
    for (const auto& p : img.pixels) {
        data.push_back(p.r);
        data.push_back(p.g);
        data.push_back(p.b);
    }
    auto f = open_for_write(path);
    const bool ok = encode(f.get(), img.width, img.height, nullptr, data.data(), std::size_t(img.width) * 3);
    finish_write(std::move(f), path, ok);
}

void save_png(const PalettedImage& img, const std::filesystem::path& path) {
    img.validate();
    auto f = open_for_write(path);
    const bool ok = encode(f.get(), img.width, img.height, &img.palette.colors(), img.indices.data(),
                           std::size_t(img.width));
    finish_write(std::move(f), path, ok);
}

}  // namespace omnirep
