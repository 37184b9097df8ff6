#pragma once

#include "lodtex/core/geometry.hpp"

#include <span>

namespace lodtex::imageproc {

struct Homography {
    Mat3 m = Mat3::Identity();

    Vec2 apply(const Vec2& p) const;
    Homography inverse() const;
    /// Scales so that m(2,2) = 1 (no-op when it is zero).
    void normalize();
};

/// Exact 4-point DLT with Hartley normalization. Throws
/// DegenerateGeometryError when any 3 source or destination points are collinear.
Homography homography_from_points(std::span<const Vec2> src, std::span<const Vec2> dst);

/// Least-squares DLT over n >= 4 correspondences.
Homography homography_dlt(std::span<const Vec2> src, std::span<const Vec2> dst);

bool has_collinear_triple(std::span<const Vec2> pts);

}  // namespace lodtex::imageproc
