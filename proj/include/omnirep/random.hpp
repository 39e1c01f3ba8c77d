#pragma once

#include <cstdint>
#include <random>
#include <string>

namespace omnirep {

/// Seeded 64-bit Mersenne Twister with bounded draws defined here instead of through
/// <random> distributions, whose output is implementation-defined. Runs therefore
/// reproduce across standard libraries, and the state round-trips through text.
class Rng {
public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform integer in [0, n). Requires n > 0.
    std::uint64_t below(std::uint64_t n);

    /// Uniform integer in [lo, hi].
    std::int64_t between(std::int64_t lo, std::int64_t hi) {
        return lo + std::int64_t(below(std::uint64_t(hi - lo) + 1));
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() { return double(next() >> 11) * 0x1.0p-53; }

    /// True with probability p. p <= 0 never fires, p >= 1 always fires.
    bool chance(double p) { return unit() < p; }

    std::string serialize() const;
    static Rng deserialize(const std::string& text);

    friend bool operator==(const Rng&, const Rng&) = default;

private:
    std::mt19937_64 engine_;
};

}  // namespace omnirep
