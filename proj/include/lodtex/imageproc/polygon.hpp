#pragma once

#include "lodtex/core/geometry.hpp"
#include "lodtex/core/image.hpp"

#include <span>

namespace lodtex::imageproc {

/// Even-odd scanline fill. Pixel (x, y) is set when its centre (x + 0.5,
/// y + 0.5) lies inside the polygon after applying the homogeneous transform.
BinaryMask rasterize_polygon(std::span<const Vec2> poly, int width, int height,
                             const Mat3& transform = Mat3::Identity());

/// Rasterized IoU on the union bounding box, `resolution` cells on the longer side.
double polygon_iou(std::span<const Vec2> p, std::span<const Vec2> q, int resolution = 1024);

/// Douglas-Peucker simplification of a closed ring with absolute tolerance.
Ring2 simplify_closed(std::span<const Vec2> ring, double tolerance);

}  // namespace lodtex::imageproc
