#include "omnirep/render.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

namespace omnirep {

namespace {

void check_color(std::int32_t c, const Palette& palette) {
    if (c < 0 || std::size_t(c) >= palette.size())
        throw RenderError("color index " + std::to_string(c) + " outside palette of " +
                          std::to_string(palette.size()));
}

void prepare(PalettedImage& canvas, int width, int height, const Palette& palette) {
    if (width <= 0 || height <= 0) throw RenderError("canvas dimensions must be positive");
    canvas.width = width;
    canvas.height = height;
    if (!(canvas.palette == palette)) canvas.palette = palette;
    canvas.indices.assign(std::size_t(width) * std::size_t(height), 0);
}

void paint_chunks(const ChunkStarts& rep, const ChunkRuns& interp, PalettedImage& canvas) {
    if (rep.genes.size() != interp.genes.size())
        throw RenderError("chunk genomes differ in length: " + std::to_string(rep.genes.size()) + " vs " +
                          std::to_string(interp.genes.size()));
    const auto n = std::int64_t(canvas.indices.size());
    for (std::size_t j = 0; j < rep.genes.size(); ++j) {
        const std::int64_t start = rep.genes[j];
        const auto [len, color] = interp.genes[j];
        if (start < 0 || start >= n) throw RenderError("chunk start " + std::to_string(start) + " outside canvas");
        if (len < 1) throw RenderError("chunk length must be positive");
        check_color(color, canvas.palette);
        const std::int64_t end = std::min(start + len, n);
        std::fill(canvas.indices.begin() + start, canvas.indices.begin() + end, std::uint8_t(color));
    }
}

// Ceiling division for a positive divisor.
std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
    std::int64_t q = num / den;
    if (num % den != 0 && num > 0) ++q;
    return q;
}

// Scanline even-odd fill sampled at pixel centers. Working in doubled coordinates the
// center of pixel (x, y) sits at (2x + 1, 2y + 1); integer vertices land on even values,
// so a center never lies exactly on a vertex's scanline.
void fill_polygon(std::span<const Point> verts, std::uint8_t color, PalettedImage& canvas,
                  std::vector<std::int64_t>& crossings) {
    auto [lo, hi] = std::minmax_element(verts.begin(), verts.end(), [](const Point& a, const Point& b) { return a.y < b.y; });
    const std::int64_t y_first = std::max<std::int64_t>(0, lo->y);
    const std::int64_t y_last = std::min<std::int64_t>(canvas.height - 1, std::int64_t(hi->y) - 1);
    const std::size_t n = verts.size();
    for (std::int64_t y = y_first; y <= y_last; ++y) {
        const std::int64_t yc = 2 * y + 1;
        crossings.clear();
        for (std::size_t i = 0; i < n; ++i) {
            const Point& a = verts[i];
            const Point& b = verts[(i + 1) % n];
            const std::int64_t ya = 2 * std::int64_t(a.y), yb = 2 * std::int64_t(b.y);
            if ((ya < yc) == (yb < yc)) continue;
            const std::int64_t xa = 2 * std::int64_t(a.x), xb = 2 * std::int64_t(b.x);
            // Crossing abscissa in doubled space is num / den with den > 0.
            std::int64_t den = yb - ya;
            std::int64_t num = xa * den + (yc - ya) * (xb - xa);
            if (den < 0) {
                den = -den;
                num = -num;
            }
            // Pixels x with 2x + 1 < num / den lie left of the crossing; the first that does not.
            crossings.push_back(ceil_div(num - den, 2 * den));
        }
        std::sort(crossings.begin(), crossings.end());
        auto* row = canvas.indices.data() + std::size_t(y) * std::size_t(canvas.width);
        for (std::size_t k = 0; k + 1 < crossings.size(); k += 2) {
            const std::int64_t x0 = std::max<std::int64_t>(0, crossings[k]);
            const std::int64_t x1 = std::min<std::int64_t>(canvas.width, crossings[k + 1]);
            if (x0 < x1) std::fill(row + x0, row + x1, color);
        }
    }
}

void paint_polygons(const PolygonVertices& rep, const PolygonShapes& interp, PalettedImage& canvas) {
    std::size_t cursor = 0;
    std::vector<std::int64_t> crossings;
    for (const auto& [sides, color] : interp.genes) {
        if (sides < 1) throw RenderError("polygon needs at least one vertex");
        check_color(color, canvas.palette);
        if (cursor + std::size_t(sides) > rep.genes.size())
            throw RenderError("polygon vertex pool exhausted: need " + std::to_string(cursor + std::size_t(sides)) +
                              " vertices, have " + std::to_string(rep.genes.size()));
        fill_polygon(std::span(rep.genes).subspan(cursor, std::size_t(sides)), std::uint8_t(color), canvas, crossings);
        cursor += std::size_t(sides);
    }
}

std::int64_t isqrt(std::int64_t v) {
    auto r = std::int64_t(std::sqrt(double(v)));
    while (r > 0 && r * r > v) --r;
    while ((r + 1) * (r + 1) <= v) ++r;
    return r;
}

void paint_circles(const CircleCenters& rep, const CircleShapes& interp, PalettedImage& canvas) {
    if (rep.genes.size() != interp.genes.size())
        throw RenderError("circle genomes differ in length: " + std::to_string(rep.genes.size()) + " vs " +
                          std::to_string(interp.genes.size()));
    for (std::size_t j = 0; j < rep.genes.size(); ++j) {
        const std::int64_t cx = rep.genes[j].x, cy = rep.genes[j].y;
        const auto [color, radius] = interp.genes[j];
        if (radius < 0) throw RenderError("circle radius must be non-negative");
        check_color(color, canvas.palette);
        const std::int64_t r = radius;
        const std::int64_t y0 = std::max<std::int64_t>(0, cy - r);
        const std::int64_t y1 = std::min<std::int64_t>(canvas.height - 1, cy + r);
        for (std::int64_t y = y0; y <= y1; ++y) {
            const std::int64_t dy = y - cy;
            const std::int64_t dx = isqrt(r * r - dy * dy);
            const std::int64_t x0 = std::max<std::int64_t>(0, cx - dx);
            const std::int64_t x1 = std::min<std::int64_t>(canvas.width - 1, cx + dx);
            if (x0 > x1) continue;
            auto* row = canvas.indices.data() + std::size_t(y) * std::size_t(canvas.width);
            std::fill(row + x0, row + x1 + 1, std::uint8_t(color));
        }
    }
}

}  // namespace

PalettedImage render_chunks(const ChunkStarts& rep, const ChunkRuns& interp, int width, int height,
                            const Palette& palette) {
    PalettedImage canvas;
    prepare(canvas, width, height, palette);
    paint_chunks(rep, interp, canvas);
    return canvas;
}

PalettedImage render_polygons(const PolygonVertices& rep, const PolygonShapes& interp, int width, int height,
                              const Palette& palette) {
    PalettedImage canvas;
    prepare(canvas, width, height, palette);
    paint_polygons(rep, interp, canvas);
    return canvas;
}

PalettedImage render_circles(const CircleCenters& rep, const CircleShapes& interp, int width, int height,
                             const Palette& palette) {
    PalettedImage canvas;
    prepare(canvas, width, height, palette);
    paint_circles(rep, interp, canvas);
    return canvas;
}

void render_into(const Representation& rep, const Interpreter& interp, const Palette& palette,
                 PalettedImage& canvas) {
    if (rep.index() != interp.index())
        throw RenderError("representation is " + std::string(to_string(kind_of(rep))) + " but interpreter is " +
                          std::string(to_string(kind_of(interp))));
    prepare(canvas, canvas.width, canvas.height, palette);
    if (const auto* r = std::get_if<ChunkStarts>(&rep)) paint_chunks(*r, std::get<ChunkRuns>(interp), canvas);
    else if (const auto* p = std::get_if<PolygonVertices>(&rep)) paint_polygons(*p, std::get<PolygonShapes>(interp), canvas);
    else paint_circles(std::get<CircleCenters>(rep), std::get<CircleShapes>(interp), canvas);
}

PalettedImage render(const Representation& rep, const Interpreter& interp, int width, int height,
                     const Palette& palette) {
    PalettedImage canvas;
    canvas.width = width;
    canvas.height = height;
    render_into(rep, interp, palette, canvas);
    return canvas;
}

}  // namespace omnirep
