#include "omnirep/genome.hpp"

#include <string>
#include <type_traits>

namespace omnirep {

namespace {

template <class T, class... Ts>
constexpr bool is_one_of = (std::is_same_v<T, Ts> || ...);

template <class G>
typename G::Gene draw_gene(const GenomeLimits& lim, int palette_size, Rng& rng) {
    auto color = [&] { return std::int32_t(rng.between(0, palette_size - 1)); };
    if constexpr (std::is_same_v<G, ChunkStarts>) {
        return std::int32_t(rng.between(0, lim.pixel_count() - 1));
    } else if constexpr (is_one_of<G, PolygonVertices, CircleCenters>) {
        const auto x = std::int32_t(rng.between(0, lim.width - 1));
        const auto y = std::int32_t(rng.between(0, lim.height - 1));
        return Point{x, y};
    } else if constexpr (std::is_same_v<G, ChunkRuns>) {
        const auto len = std::int32_t(rng.between(lim.chunk_len_min, lim.chunk_len_max));
        return ChunkGene{len, color()};
    } else if constexpr (std::is_same_v<G, PolygonShapes>) {
        const auto sides = std::int32_t(rng.between(lim.sides_min, lim.sides_max));
        return PolygonGene{sides, color()};
    } else {
        static_assert(std::is_same_v<G, CircleShapes>);
        const auto c = color();
        return CircleGene{c, std::int32_t(rng.between(lim.radius_min, lim.radius_max))};
    }
}

template <class G>
std::size_t configured_length(const GenomeLimits& lim) {
    if constexpr (is_one_of<G, ChunkStarts, ChunkRuns>) return std::size_t(lim.n_chunks);
    else if constexpr (std::is_same_v<G, PolygonVertices>) return std::size_t(lim.coord_pool());
    else if constexpr (std::is_same_v<G, PolygonShapes>) return std::size_t(lim.n_polygons);
    else return std::size_t(lim.n_circles);
}

bool in_range(std::int64_t v, std::int64_t lo, std::int64_t hi) { return lo <= v && v <= hi; }

template <class G>
bool gene_valid(const typename G::Gene& g, const GenomeLimits& lim, int palette_size) {
    if constexpr (std::is_same_v<G, ChunkStarts>) {
        return in_range(g, 0, lim.pixel_count() - 1);
    } else if constexpr (is_one_of<G, PolygonVertices, CircleCenters>) {
        return in_range(g.x, 0, lim.width - 1) && in_range(g.y, 0, lim.height - 1);
    } else if constexpr (std::is_same_v<G, ChunkRuns>) {
        return in_range(g.length, lim.chunk_len_min, lim.chunk_len_max) && in_range(g.color, 0, palette_size - 1);
    } else if constexpr (std::is_same_v<G, PolygonShapes>) {
        return in_range(g.sides, lim.sides_min, lim.sides_max) && in_range(g.color, 0, palette_size - 1);
    } else {
        return in_range(g.radius, lim.radius_min, lim.radius_max) && in_range(g.color, 0, palette_size - 1);
    }
}

template <class G>
G random_genome(const GenomeLimits& lim, int palette_size, Rng& rng) {
    G g;
    const auto n = configured_length<G>(lim);
    g.genes.reserve(n);
    for (std::size_t i = 0; i < n; ++i) g.genes.push_back(draw_gene<G>(lim, palette_size, rng));
    return g;
}

template <class G>
void validate_genome(const G& g, const GenomeLimits& lim, int palette_size) {
    const auto expected = configured_length<G>(lim);
    if (g.genes.size() != expected)
        throw GenomeError(std::string(to_string(G::kind)) + " genome has " + std::to_string(g.genes.size()) +
                          " genes, expected " + std::to_string(expected));
    for (std::size_t i = 0; i < g.genes.size(); ++i)
        if (!gene_valid<G>(g.genes[i], lim, palette_size))
            throw GenomeError(std::string(to_string(G::kind)) + " gene " + std::to_string(i) + " out of range");
}

template <class Variant>
std::pair<Variant, Variant> cross_variant(const Variant& a, const Variant& b, std::size_t cut) {
    if (a.index() != b.index()) throw GenomeError("crossover parents differ in setup kind");
    return std::visit(
        [&](const auto& pa) -> std::pair<Variant, Variant> {
            using G = std::decay_t<decltype(pa)>;
            const auto& pb = std::get<G>(b);
            const std::size_t len = pa.genes.size();
            if (pb.genes.size() != len) throw GenomeError("crossover parents differ in length");
            if (len < 2) throw GenomeError("crossover needs genomes of at least 2 genes");
            if (cut < 1 || cut > len - 1) throw GenomeError("crossover cut outside [1, L-1]");
            G c1, c2;
            c1.genes.reserve(len);
            c2.genes.reserve(len);
            const auto k = std::ptrdiff_t(cut);
            c1.genes.insert(c1.genes.end(), pa.genes.begin(), pa.genes.begin() + k);
            c1.genes.insert(c1.genes.end(), pb.genes.begin() + k, pb.genes.end());
            c2.genes.insert(c2.genes.end(), pb.genes.begin(), pb.genes.begin() + k);
            c2.genes.insert(c2.genes.end(), pa.genes.begin() + k, pa.genes.end());
            return {Variant(std::move(c1)), Variant(std::move(c2))};
        },
        a);
}

template <class Variant>
std::pair<Variant, Variant> cross_variant_random(const Variant& a, const Variant& b, Rng& rng) {
    if (a.index() != b.index()) throw GenomeError("crossover parents differ in setup kind");
    const std::size_t len = std::visit([](const auto& g) { return g.genes.size(); }, a);
    if (len < 2) throw GenomeError("crossover needs genomes of at least 2 genes");
    const auto cut = std::size_t(rng.between(1, std::int64_t(len) - 1));
    return cross_variant(a, b, cut);
}

template <class Variant>
Variant mutate_variant(const Variant& g, const GenomeLimits& lim, int palette_size, double p_mut, Rng& rng) {
    if (!(p_mut >= 0.0 && p_mut <= 1.0)) throw GenomeError("mutation probability must lie in [0, 1]");
    if (!rng.chance(p_mut)) return g;
    return std::visit(
        [&](const auto& genome) -> Variant {
            using G = std::decay_t<decltype(genome)>;
            G out = genome;
            if (out.genes.empty()) return Variant(std::move(out));
            const auto pos = std::size_t(rng.below(out.genes.size()));
            out.genes[pos] = draw_gene<G>(lim, palette_size, rng);
            return Variant(std::move(out));
        },
        g);
}

template <class Variant>
Variant random_variant(SetupKind kind, const GenomeLimits& lim, int palette_size, Rng& rng) {
    switch (kind) {
        case SetupKind::Chunks: return random_genome<std::variant_alternative_t<0, Variant>>(lim, palette_size, rng);
        case SetupKind::Polygons: return random_genome<std::variant_alternative_t<1, Variant>>(lim, palette_size, rng);
        case SetupKind::Circles: return random_genome<std::variant_alternative_t<2, Variant>>(lim, palette_size, rng);
    }
    throw GenomeError("unknown setup kind");
}

}  // namespace

std::string_view to_string(SetupKind kind) {
    switch (kind) {
        case SetupKind::Chunks: return "chunks";
        case SetupKind::Polygons: return "polygons";
        case SetupKind::Circles: return "circles";
    }
    return "unknown";
}

SetupKind parse_setup(std::string_view name) {
    if (name == "chunks") return SetupKind::Chunks;
    if (name == "polygons") return SetupKind::Polygons;
    if (name == "circles") return SetupKind::Circles;
    throw std::invalid_argument("unknown setup '" + std::string(name) + "' (expected chunks, polygons or circles)");
}

void GenomeLimits::validate() const {
    auto require = [](bool ok, const char* what) {
        if (!ok) throw GenomeError(std::string("invalid genome limits: ") + what);
    };
    require(n_chunks > 0 && n_polygons > 0 && n_circles > 0, "counts must be positive");
    require(chunk_len_min >= 1 && chunk_len_min <= chunk_len_max, "need 1 <= chunk_len_min <= chunk_len_max");
    require(sides_min >= 3 && sides_min <= sides_max, "need 3 <= sides_min <= sides_max");
    require(radius_min >= 0 && radius_min <= radius_max, "need 0 <= radius_min <= radius_max");
    require(width > 0 && height > 0, "canvas dimensions must be positive");
}

SetupKind kind_of(const Representation& g) {
    return std::visit([](const auto& x) { return std::decay_t<decltype(x)>::kind; }, g);
}
SetupKind kind_of(const Interpreter& g) {
    return std::visit([](const auto& x) { return std::decay_t<decltype(x)>::kind; }, g);
}
std::size_t gene_count(const Representation& g) {
    return std::visit([](const auto& x) { return x.genes.size(); }, g);
}
std::size_t gene_count(const Interpreter& g) {
    return std::visit([](const auto& x) { return x.genes.size(); }, g);
}

std::size_t representation_length(SetupKind kind, const GenomeLimits& lim) {
    switch (kind) {
        case SetupKind::Chunks: return configured_length<ChunkStarts>(lim);
        case SetupKind::Polygons: return configured_length<PolygonVertices>(lim);
        case SetupKind::Circles: return configured_length<CircleCenters>(lim);
    }
    return 0;
}

std::size_t interpreter_length(SetupKind kind, const GenomeLimits& lim) {
    switch (kind) {
        case SetupKind::Chunks: return configured_length<ChunkRuns>(lim);
        case SetupKind::Polygons: return configured_length<PolygonShapes>(lim);
        case SetupKind::Circles: return configured_length<CircleShapes>(lim);
    }
    return 0;
}

Representation random_representation(SetupKind kind, const GenomeLimits& lim, Rng& rng) {
    lim.validate();
    return random_variant<Representation>(kind, lim, 1, rng);
}

Interpreter random_interpreter(SetupKind kind, const GenomeLimits& lim, int palette_size, Rng& rng) {
    lim.validate();
    if (palette_size < 1) throw GenomeError("palette size must be at least 1");
    return random_variant<Interpreter>(kind, lim, palette_size, rng);
}

void validate(const Representation& g, const GenomeLimits& lim) {
    std::visit([&](const auto& x) { validate_genome(x, lim, 1); }, g);
}

void validate(const Interpreter& g, const GenomeLimits& lim, int palette_size) {
    std::visit([&](const auto& x) { validate_genome(x, lim, palette_size); }, g);
}

std::pair<Representation, Representation> crossover(const Representation& a, const Representation& b, Rng& rng) {
    return cross_variant_random(a, b, rng);
}
std::pair<Interpreter, Interpreter> crossover(const Interpreter& a, const Interpreter& b, Rng& rng) {
    return cross_variant_random(a, b, rng);
}
std::pair<Representation, Representation> crossover_at(const Representation& a, const Representation& b,
                                                       std::size_t cut) {
    return cross_variant(a, b, cut);
}
std::pair<Interpreter, Interpreter> crossover_at(const Interpreter& a, const Interpreter& b, std::size_t cut) {
    return cross_variant(a, b, cut);
}

Representation mutate(const Representation& g, const GenomeLimits& lim, int palette_size, double p_mut, Rng& rng) {
    return mutate_variant(g, lim, palette_size, p_mut, rng);
}
Interpreter mutate(const Interpreter& g, const GenomeLimits& lim, int palette_size, double p_mut, Rng& rng) {
    return mutate_variant(g, lim, palette_size, p_mut, rng);
}

}  // namespace omnirep
