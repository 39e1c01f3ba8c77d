#pragma once

#include <stdexcept>
#include <string_view>

#include "omnirep/image.hpp"

namespace omnirep {

/// Which pixel values the error is measured over.
enum class ErrorSpace {
    Rgb,    ///< palette-resolved 8-bit channels, the default
    Index,  ///< raw palette indices
};

std::string_view to_string(ErrorSpace space);
ErrorSpace parse_error_space(std::string_view name);

class FitnessError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Mean absolute error between two paletted images; lower is better.
///
/// In RGB space every index is resolved through its own image's palette and the
/// absolute channel differences are summed exactly in integers, then divided once by
/// 3*W*H, so the result lies in [0, 255]. In index space the sum of |index difference|
/// is divided by W*H.
double mae(const PalettedImage& rendered, const PalettedImage& target, ErrorSpace space = ErrorSpace::Rgb);

}  // namespace omnirep
