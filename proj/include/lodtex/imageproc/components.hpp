#pragma once

#include "lodtex/core/image.hpp"

#include <vector>

namespace lodtex::imageproc {

struct Components {
    /// 0 = background, labels 1..n in raster-scan discovery order.
    Image<int> labels;
    /// areas[l - 1] is the pixel count of label l.
    std::vector<std::size_t> areas;

    std::size_t count() const noexcept { return areas.size(); }
};

/// connectivity is 4 or 8.
Components connected_components(const BinaryMask& mask, int connectivity = 8);

/// Clears components with area < min_area.
BinaryMask remove_small_components(const BinaryMask& mask, std::size_t min_area, int connectivity = 8);

}  // namespace lodtex::imageproc
