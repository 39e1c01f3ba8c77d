#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "omnirep/genome.hpp"
#include "support/fixtures.hpp"

using namespace omnirep;

namespace {

GenomeLimits table_limits(int w, int h) {
    GenomeLimits l;
    l.width = w;
    l.height = h;
    return l;
}

template <class G>
std::map<typename G::Gene, int> gene_multiset(const G& a, const G& b) {
    std::map<typename G::Gene, int> m;
    for (const auto& g : a.genes) ++m[g];
    for (const auto& g : b.genes) ++m[g];
    return m;
}

template <class Variant>
std::size_t hamming(const Variant& a, const Variant& b) {
    return std::visit(
        [&](const auto& x) {
            const auto& y = std::get<std::decay_t<decltype(x)>>(b);
            std::size_t d = 0;
            for (std::size_t i = 0; i < x.genes.size(); ++i) d += x.genes[i] == y.genes[i] ? 0 : 1;
            return d;
        },
        a);
}

constexpr SetupKind kAllKinds[] = {SetupKind::Chunks, SetupKind::Polygons, SetupKind::Circles};

}  // namespace

TEST_CASE("GenomeLimits defaults follow the published parameters") {
    const GenomeLimits l;
    CHECK(l.n_chunks == 5000);
    CHECK(l.chunk_len_min == 1);
    CHECK(l.chunk_len_max == 10);
    CHECK(l.n_polygons == 50);
    CHECK(l.sides_min == 3);
    CHECK(l.sides_max == 12);
    CHECK(l.coord_pool() == 600);
    CHECK(l.n_circles == 50);
    CHECK(l.radius_min == 3);
    CHECK(l.radius_max == 50);
}

TEST_CASE("GenomeLimits validation") {
    auto l = table_limits(8, 8);
    CHECK_NOTHROW(l.validate());
    l.chunk_len_min = 11;
    CHECK_THROWS_AS(l.validate(), GenomeError);
    l = table_limits(8, 8);
    l.n_circles = 0;
    CHECK_THROWS_AS(l.validate(), GenomeError);
    l = table_limits(0, 8);
    CHECK_THROWS_AS(l.validate(), GenomeError);
}

TEST_CASE("setup names round trip") {
    for (auto k : kAllKinds) CHECK(parse_setup(to_string(k)) == k);
    CHECK_THROWS_AS(parse_setup("squares"), std::invalid_argument);
}

TEST_CASE("random_representation stays in range") {
    Rng rng(1);
    SUBCASE("chunks on a 4x1 image") {
        const auto g = random_representation(SetupKind::Chunks, table_limits(4, 1), rng);
        const auto& starts = std::get<ChunkStarts>(g).genes;
        CHECK(starts.size() == 5000);
        for (auto p : starts) CHECK((p >= 0 && p <= 3));
    }
    SUBCASE("circles on 10x10") {
        const auto g = random_representation(SetupKind::Circles, table_limits(10, 10), rng);
        const auto& centers = std::get<CircleCenters>(g).genes;
        CHECK(centers.size() == 50);
        for (auto c : centers) CHECK((c.x >= 0 && c.x <= 9 && c.y >= 0 && c.y <= 9));
    }
    SUBCASE("polygon pool") {
        const auto g = random_representation(SetupKind::Polygons, table_limits(7, 3), rng);
        CHECK(std::get<PolygonVertices>(g).genes.size() == 600);
        CHECK_NOTHROW(validate(g, table_limits(7, 3)));
    }
}

TEST_CASE("chunk start draws are uniform (chi-square, 5 sigma)") {
    // 10,000 draws over 4 cells: expected 2,500 each. Chi-square with 3 degrees of
    // freedom has mean 3 and variance 6, so 5 sigma above the mean is 3 + 5*sqrt(6).
    Rng rng(99);
    const auto lim = table_limits(4, 1);
    std::array<int, 4> counts{};
    int draws = 0;
    while (draws < 10000) {
        for (auto p : std::get<ChunkStarts>(random_representation(SetupKind::Chunks, lim, rng)).genes) {
            if (draws == 10000) break;
            ++counts[std::size_t(p)];
            ++draws;
        }
    }
    double chi2 = 0;
    for (int c : counts) chi2 += (c - 2500.0) * (c - 2500.0) / 2500.0;
    CHECK(chi2 < 3 + 5 * std::sqrt(6.0));
    // per-cell binomial check: sigma = sqrt(10000 * 0.25 * 0.75)
    for (int c : counts) CHECK(std::abs(c - 2500.0) < 5 * std::sqrt(1875.0));
}

TEST_CASE("random_interpreter respects published ranges") {
    Rng rng(2);
    const auto lim = table_limits(16, 16);
    SUBCASE("chunks") {
        const auto g = random_interpreter(SetupKind::Chunks, lim, 4, rng);
        const auto& genes = std::get<ChunkRuns>(g).genes;
        CHECK(genes.size() == 5000);
        for (auto [len, color] : genes) CHECK((len >= 1 && len <= 10 && color >= 0 && color <= 3));
    }
    SUBCASE("polygons") {
        const auto g = random_interpreter(SetupKind::Polygons, lim, 4, rng);
        const auto& genes = std::get<PolygonShapes>(g).genes;
        CHECK(genes.size() == 50);
        for (auto [sides, color] : genes) CHECK((sides >= 3 && sides <= 12 && color >= 0 && color <= 3));
    }
    SUBCASE("circles") {
        const auto g = random_interpreter(SetupKind::Circles, lim, 4, rng);
        for (auto [color, r] : std::get<CircleShapes>(g).genes) CHECK((r >= 3 && r <= 50 && color >= 0 && color <= 3));
    }
    SUBCASE("single color palette") {
        for (auto k : kAllKinds) {
            const auto g = random_interpreter(k, lim, 1, rng);
            std::visit([](const auto& x) {
                for (const auto& gene : x.genes) CHECK(gene.color == 0);
            }, g);
        }
    }
    CHECK_THROWS_AS(random_interpreter(SetupKind::Chunks, lim, 0, rng), GenomeError);
}

TEST_CASE("crossover_at swaps tails") {
    const Representation a = ChunkStarts{{1, 2, 3, 4}};
    const Representation b = ChunkStarts{{11, 12, 13, 14}};
    const auto [c1, c2] = crossover_at(a, b, 2);
    CHECK(std::get<ChunkStarts>(c1).genes == std::vector<std::int32_t>{1, 2, 13, 14});
    CHECK(std::get<ChunkStarts>(c2).genes == std::vector<std::int32_t>{11, 12, 3, 4});
    CHECK(std::get<ChunkStarts>(a).genes == std::vector<std::int32_t>{1, 2, 3, 4});

    const Interpreter ia = CircleShapes{{{0, 3}, {1, 4}, {2, 5}}};
    const Interpreter ib = CircleShapes{{{3, 9}, {3, 8}, {3, 7}}};
    const auto [d1, d2] = crossover_at(ia, ib, 1);
    CHECK(std::get<CircleShapes>(d1).genes == std::vector<CircleGene>{{0, 3}, {3, 8}, {3, 7}});
    CHECK(std::get<CircleShapes>(d2).genes == std::vector<CircleGene>{{3, 9}, {1, 4}, {2, 5}});

    // polygon pools cut between pairs, never inside one
    const Representation pa = PolygonVertices{{{0, 1}, {2, 3}, {4, 5}}};
    const Representation pb = PolygonVertices{{{6, 7}, {8, 9}, {10, 11}}};
    const auto [e1, e2] = crossover_at(pa, pb, 2);
    CHECK(std::get<PolygonVertices>(e1).genes == std::vector<Point>{{0, 1}, {2, 3}, {10, 11}});
    CHECK(std::get<PolygonVertices>(e2).genes == std::vector<Point>{{6, 7}, {8, 9}, {4, 5}});
}

TEST_CASE("crossover errors") {
    Rng rng(3);
    const Representation a = ChunkStarts{{1, 2, 3}};
    CHECK_THROWS_AS(crossover(a, Representation(CircleCenters{{{1, 1}, {2, 2}, {3, 3}}}), rng), GenomeError);
    CHECK_THROWS_AS(crossover(a, Representation(ChunkStarts{{1, 2}}), rng), GenomeError);
    CHECK_THROWS_AS(crossover(Representation(ChunkStarts{{1}}), Representation(ChunkStarts{{2}}), rng), GenomeError);
    CHECK_THROWS_AS(crossover_at(a, a, 0), GenomeError);
    CHECK_THROWS_AS(crossover_at(a, a, 3), GenomeError);
}

TEST_CASE("crossover of identical parents yields copies") {
    Rng rng(4);
    const auto lim = table_limits(12, 9);
    for (auto k : kAllKinds) {
        const auto g = random_interpreter(k, lim, 4, rng);
        const auto [c1, c2] = crossover(g, g, rng);
        CHECK(c1 == g);
        CHECK(c2 == g);
    }
}

TEST_CASE("crossover cut is uniform over [1, L-1]") {
    Rng rng(5);
    const Representation a = ChunkStarts{{0, 0, 0, 0, 0}};
    const Representation b = ChunkStarts{{1, 1, 1, 1, 1}};
    std::array<int, 5> cuts{};
    for (int t = 0; t < 8000; ++t) {
        const auto [c1, c2] = crossover(a, b, rng);
        const auto& g = std::get<ChunkStarts>(c1).genes;
        const auto cut = std::size_t(std::find(g.begin(), g.end(), 1) - g.begin());
        REQUIRE(cut >= 1);
        REQUIRE(cut <= 4);
        ++cuts[cut];
    }
    CHECK(cuts[0] == 0);
    for (std::size_t k = 1; k <= 4; ++k) CHECK(std::abs(cuts[k] - 2000) < 5 * std::sqrt(8000 * 0.25 * 0.75));
}

TEST_CASE("mutate probability limits") {
    Rng rng(6);
    const auto lim = table_limits(10, 10);
    for (auto k : kAllKinds) {
        const auto rep = random_representation(k, lim, rng);
        CHECK(mutate(rep, lim, 4, 0.0, rng) == rep);
        const auto interp = random_interpreter(k, lim, 4, rng);
        CHECK(mutate(interp, lim, 4, 0.0, rng) == interp);
        for (int t = 0; t < 50; ++t) {
            CHECK(hamming(mutate(rep, lim, 4, 1.0, rng), rep) <= 1);
            CHECK(hamming(mutate(interp, lim, 4, 1.0, rng), interp) <= 1);
        }
    }
    CHECK_THROWS_AS(mutate(random_representation(SetupKind::Chunks, lim, rng), lim, 4, 1.5, rng), GenomeError);
}

TEST_CASE("mutated chunk tuple stays in range") {
    Rng rng(7);
    const auto lim = table_limits(20, 20);
    const auto g = random_interpreter(SetupKind::Chunks, lim, 4, rng);
    for (int t = 0; t < 200; ++t) {
        const auto m = mutate(g, lim, 4, 1.0, rng);
        const auto& a = std::get<ChunkRuns>(g).genes;
        const auto& b = std::get<ChunkRuns>(m).genes;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!(a[i] == b[i])) CHECK((b[i].length >= 1 && b[i].length <= 10 && b[i].color >= 0 && b[i].color <= 3));
    }
}

TEST_CASE("mutation rate matches p_mut") {
    Rng rng(8);
    const auto lim = table_limits(50, 50);
    const auto g = random_representation(SetupKind::Circles, lim, rng);
    int changed = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) changed += mutate(g, lim, 4, 0.3, rng) == g ? 0 : 1;
    // A resample can coincide with the old gene (probability 1/2500 here), so the
    // observed rate sits a hair under 0.3.
    CHECK(std::abs(changed - 0.3 * trials) < 5 * std::sqrt(trials * 0.3 * 0.7));
}

TEST_CASE("variation operators: randomized closure and conservation") {
    Rng rng(9);
    for (int t = 0; t < 2000; ++t) {
        const int w = int(rng.between(1, 24)), h = int(rng.between(1, 24));
        const auto lim = fixtures::small_limits(w, h, rng);
        const int colors = int(rng.between(1, 6));
        const auto kind = kAllKinds[rng.below(3)];
        const auto ra = random_representation(kind, lim, rng), rb = random_representation(kind, lim, rng);
        const auto ia = random_interpreter(kind, lim, colors, rng), ib = random_interpreter(kind, lim, colors, rng);

        const auto [r1, r2] = crossover(ra, rb, rng);
        const auto [i1, i2] = crossover(ia, ib, rng);
        for (const auto* g : {&r1, &r2}) CHECK_NOTHROW(validate(*g, lim));
        for (const auto* g : {&i1, &i2}) CHECK_NOTHROW(validate(*g, lim, colors));
        std::visit([&](const auto& a) {
            using G = std::decay_t<decltype(a)>;
            CHECK(gene_multiset(std::get<G>(r1), std::get<G>(r2)) == gene_multiset(a, std::get<G>(rb)));
        }, ra);
        std::visit([&](const auto& a) {
            using G = std::decay_t<decltype(a)>;
            CHECK(gene_multiset(std::get<G>(i1), std::get<G>(i2)) == gene_multiset(a, std::get<G>(ib)));
        }, ia);

        const double p = rng.unit();
        const auto mr = mutate(ra, lim, colors, p, rng);
        const auto mi = mutate(ia, lim, colors, p, rng);
        CHECK_NOTHROW(validate(mr, lim));
        CHECK_NOTHROW(validate(mi, lim, colors));
        CHECK(hamming(mr, ra) <= 1);
        CHECK(hamming(mi, ia) <= 1);
    }
}

TEST_CASE("operators are deterministic given the seed") {
    const auto lim = table_limits(30, 20);
    auto trace = [&](std::uint64_t seed) {
        Rng rng(seed);
        auto a = random_interpreter(SetupKind::Polygons, lim, 4, rng);
        auto b = random_interpreter(SetupKind::Polygons, lim, 4, rng);
        auto [c1, c2] = crossover(a, b, rng);
        return std::pair(mutate(c1, lim, 4, 0.5, rng), c2);
    };
    CHECK(trace(42) == trace(42));
    CHECK(!(trace(42) == trace(43)));
}

TEST_CASE("validate rejects out-of-range genes and wrong lengths") {
    const auto lim = table_limits(4, 4);
    Rng rng(10);
    auto g = std::get<ChunkRuns>(random_interpreter(SetupKind::Chunks, lim, 4, rng));
    g.genes[17].length = 11;
    CHECK_THROWS_AS(validate(Interpreter(g), lim, 4), GenomeError);
    auto r = std::get<ChunkStarts>(random_representation(SetupKind::Chunks, lim, rng));
    r.genes.pop_back();
    CHECK_THROWS_AS(validate(Representation(r), lim), GenomeError);
    auto c = std::get<CircleCenters>(random_representation(SetupKind::Circles, lim, rng));
    c.genes[0].x = 4;
    CHECK_THROWS_AS(validate(Representation(c), lim), GenomeError);
}

TEST_CASE("rng bounded draws") {
    Rng rng(12);
    for (int t = 0; t < 1000; ++t) {
        const auto v = rng.between(-3, 3);
        CHECK((v >= -3 && v <= 3));
        const double u = rng.unit();
        CHECK((u >= 0.0 && u < 1.0));
    }
    CHECK_THROWS(rng.below(0));
    Rng copy = Rng::deserialize(rng.serialize());
    CHECK(copy == rng);
    CHECK(copy.next() == rng.next());
}
