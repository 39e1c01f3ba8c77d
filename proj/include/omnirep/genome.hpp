#pragma once

#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "omnirep/random.hpp"

namespace omnirep {

enum class SetupKind { Chunks, Polygons, Circles };

std::string_view to_string(SetupKind kind);
/// Accepts "chunks", "polygons", "circles". Throws std::invalid_argument otherwise.
SetupKind parse_setup(std::string_view name);

class GenomeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Gene-range bounds for all three setups plus the canvas the positions live on.
struct GenomeLimits {
    int n_chunks = 5000;
    int chunk_len_min = 1;
    int chunk_len_max = 10;
    int n_polygons = 50;
    int sides_min = 3;
    int sides_max = 12;
    int n_circles = 50;
    int radius_min = 3;
    int radius_max = 50;
    int width = 1;
    int height = 1;

    /// Size of the polygon vertex pool: enough vertices for every polygon at maximum sides.
    int coord_pool() const { return n_polygons * sides_max; }
    std::int64_t pixel_count() const { return std::int64_t(width) * height; }

    void validate() const;

    friend bool operator==(const GenomeLimits&, const GenomeLimits&) = default;
};

struct Point {
    std::int32_t x = 0;
    std::int32_t y = 0;
    friend bool operator==(const Point&, const Point&) = default;
    friend auto operator<=>(const Point&, const Point&) = default;
};

struct ChunkGene {
    std::int32_t length = 1;
    std::int32_t color = 0;
    friend bool operator==(const ChunkGene&, const ChunkGene&) = default;
    friend auto operator<=>(const ChunkGene&, const ChunkGene&) = default;
};

struct PolygonGene {
    std::int32_t sides = 3;
    std::int32_t color = 0;
    friend bool operator==(const PolygonGene&, const PolygonGene&) = default;
    friend auto operator<=>(const PolygonGene&, const PolygonGene&) = default;
};

struct CircleGene {
    std::int32_t color = 0;
    std::int32_t radius = 1;
    friend bool operator==(const CircleGene&, const CircleGene&) = default;
    friend auto operator<=>(const CircleGene&, const CircleGene&) = default;
};

// Representation genomes: where shapes go.

/// Row-major start index of each chunk, in painting order.
struct ChunkStarts {
    using Gene = std::int32_t;
    static constexpr SetupKind kind = SetupKind::Chunks;
    std::vector<Gene> genes;
    friend bool operator==(const ChunkStarts&, const ChunkStarts&) = default;
};

/// Vertex pool consumed sequentially by the polygons an interpreter describes.
struct PolygonVertices {
    using Gene = Point;
    static constexpr SetupKind kind = SetupKind::Polygons;
    std::vector<Gene> genes;
    friend bool operator==(const PolygonVertices&, const PolygonVertices&) = default;
};

struct CircleCenters {
    using Gene = Point;
    static constexpr SetupKind kind = SetupKind::Circles;
    std::vector<Gene> genes;
    friend bool operator==(const CircleCenters&, const CircleCenters&) = default;
};

// Interpreter genomes: what each position turns into.

struct ChunkRuns {
    using Gene = ChunkGene;
    static constexpr SetupKind kind = SetupKind::Chunks;
    std::vector<Gene> genes;
    friend bool operator==(const ChunkRuns&, const ChunkRuns&) = default;
};

struct PolygonShapes {
    using Gene = PolygonGene;
    static constexpr SetupKind kind = SetupKind::Polygons;
    std::vector<Gene> genes;
    friend bool operator==(const PolygonShapes&, const PolygonShapes&) = default;
};

struct CircleShapes {
    using Gene = CircleGene;
    static constexpr SetupKind kind = SetupKind::Circles;
    std::vector<Gene> genes;
    friend bool operator==(const CircleShapes&, const CircleShapes&) = default;
};

using Representation = std::variant<ChunkStarts, PolygonVertices, CircleCenters>;
using Interpreter = std::variant<ChunkRuns, PolygonShapes, CircleShapes>;

SetupKind kind_of(const Representation& g);
SetupKind kind_of(const Interpreter& g);
std::size_t gene_count(const Representation& g);
std::size_t gene_count(const Interpreter& g);

/// Configured genome lengths for a setup.
std::size_t representation_length(SetupKind kind, const GenomeLimits& limits);
std::size_t interpreter_length(SetupKind kind, const GenomeLimits& limits);

Representation random_representation(SetupKind kind, const GenomeLimits& limits, Rng& rng);
Interpreter random_interpreter(SetupKind kind, const GenomeLimits& limits, int palette_size, Rng& rng);

/// Throws GenomeError naming the first gene that violates its range or a length mismatch.
void validate(const Representation& g, const GenomeLimits& limits);
void validate(const Interpreter& g, const GenomeLimits& limits, int palette_size);

/// Single-point crossover with the cut drawn uniformly from [1, L-1].
std::pair<Representation, Representation> crossover(const Representation& a, const Representation& b, Rng& rng);
std::pair<Interpreter, Interpreter> crossover(const Interpreter& a, const Interpreter& b, Rng& rng);

/// Crossover at a fixed cut point in [1, L-1].
std::pair<Representation, Representation> crossover_at(const Representation& a, const Representation& b,
                                                       std::size_t cut);
std::pair<Interpreter, Interpreter> crossover_at(const Interpreter& a, const Interpreter& b, std::size_t cut);

/// With probability p_mut, resamples one uniformly chosen gene (a whole tuple or
/// coordinate pair) from its legal range; otherwise returns the input unchanged.
Representation mutate(const Representation& g, const GenomeLimits& limits, int palette_size, double p_mut, Rng& rng);
Interpreter mutate(const Interpreter& g, const GenomeLimits& limits, int palette_size, double p_mut, Rng& rng);

}  // namespace omnirep
