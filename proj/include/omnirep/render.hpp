#pragma once

#include "omnirep/genome.hpp"
#include "omnirep/image.hpp"

namespace omnirep {

class RenderError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Every renderer starts from a canvas filled with palette index 0 and paints shapes
// in genome order; a later shape opaquely covers an earlier one. The output carries
// `palette`, and every color a genome references must index into it.

/// Chunk j paints row-major pixels p_j .. p_j + b_j - 1, clamped at the last pixel.
PalettedImage render_chunks(const ChunkStarts& rep, const ChunkRuns& interp, int width, int height,
                            const Palette& palette);

/// Polygon j takes the next s_j vertices from the pool. A pixel is painted when its
/// center (x + 0.5, y + 0.5) is inside under the even-odd rule. Leftover vertices are unused.
PalettedImage render_polygons(const PolygonVertices& rep, const PolygonShapes& interp, int width, int height,
                              const Palette& palette);

/// Closed integer disks: (x - cx)^2 + (y - cy)^2 <= r^2, clipped to the canvas.
PalettedImage render_circles(const CircleCenters& rep, const CircleShapes& interp, int width, int height,
                             const Palette& palette);

/// Dispatches on the setup kind; throws RenderError if the two genomes disagree.
PalettedImage render(const Representation& rep, const Interpreter& interp, int width, int height,
                     const Palette& palette);

/// Renders into an existing canvas (resized and cleared first); the hot path for evaluation.
void render_into(const Representation& rep, const Interpreter& interp, const Palette& palette,
                 PalettedImage& canvas);

}  // namespace omnirep
