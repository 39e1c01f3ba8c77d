#include "omnirep/fitness.hpp"

#include <array>
#include <cstdlib>
#include <string>

namespace omnirep {

std::string_view to_string(ErrorSpace space) { return space == ErrorSpace::Rgb ? "rgb" : "index"; }

ErrorSpace parse_error_space(std::string_view name) {
    if (name == "rgb") return ErrorSpace::Rgb;
    if (name == "index") return ErrorSpace::Index;
    throw std::invalid_argument("unknown error space '" + std::string(name) + "' (expected rgb or index)");
}

double mae(const PalettedImage& rendered, const PalettedImage& target, ErrorSpace space) {
    if (rendered.width != target.width || rendered.height != target.height)
        throw FitnessError("dimension mismatch: " + std::to_string(rendered.width) + "x" +
                           std::to_string(rendered.height) + " vs " + std::to_string(target.width) + "x" +
                           std::to_string(target.height));
    const std::size_t n = target.indices.size();
    if (rendered.indices.size() != n || n == 0) throw FitnessError("pixel buffers are empty or inconsistent");

    std::uint64_t sum = 0;
    if (space == ErrorSpace::Index) {
        for (std::size_t i = 0; i < n; ++i) sum += std::uint64_t(std::abs(int(rendered.indices[i]) - int(target.indices[i])));
        return double(sum) / double(n);
    }

    // Per-pair channel distance table: K_rendered x K_target entries.
    const std::size_t kr = rendered.palette.size(), kt = target.palette.size();
    std::array<int, 256 * 16> small{};
    std::vector<int> large;
    int* table = small.data();
    if (kr * kt > small.size()) {
        large.resize(kr * kt);
        table = large.data();
    }
    for (std::size_t a = 0; a < kr; ++a)
        for (std::size_t b = 0; b < kt; ++b) {
            const Rgb x = rendered.palette[a], y = target.palette[b];
            table[a * kt + b] = std::abs(int(x.r) - int(y.r)) + std::abs(int(x.g) - int(y.g)) + std::abs(int(x.b) - int(y.b));
        }
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t a = rendered.indices[i], b = target.indices[i];
        if (a >= kr || b >= kt) throw FitnessError("palette index out of range");
        sum += std::uint64_t(table[a * kt + b]);
    }
    return double(sum) / (3.0 * double(n));
}

}  // namespace omnirep
