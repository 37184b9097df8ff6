#pragma once

#include "lodtex/core/geometry.hpp"
#include "lodtex/core/image.hpp"

#include <vector>

namespace lodtex::imageproc {

struct Contour {
    /// Boundary pixel centres in tracing order.
    Ring2 points;
    double area = 0.0;        // shoelace area of points
    std::size_t pixels = 0;   // size of the traced component
};

/// Outer contour of every 8-connected component (Moore neighbour tracing),
/// in component discovery order.
std::vector<Contour> outer_contours(const BinaryMask& mask);

/// Convex hull of the largest outer contour. Throws EmptyMaskError.
Ring2 convex_hull_of_largest_contour(const BinaryMask& mask);

}  // namespace lodtex::imageproc
