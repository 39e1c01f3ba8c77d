#include "omnirep/random.hpp"

#include <sstream>
#include <stdexcept>

namespace omnirep {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("Rng::below requires a positive bound");
    // Rejection sampling on the largest multiple of n that fits in 64 bits.
    const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % n + 1) % n;
    std::uint64_t x = next();
    while (x > limit) x = next();
    return x % n;
}

std::string Rng::serialize() const {
    std::ostringstream os;
    os << engine_;
    return os.str();
}

Rng Rng::deserialize(const std::string& text) {
    Rng rng;
    std::istringstream is(text);
    is >> rng.engine_;
    if (is.fail()) throw std::invalid_argument("malformed RNG state");
    return rng;
}

}  // namespace omnirep
