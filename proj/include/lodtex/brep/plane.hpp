#pragma once

#include "lodtex/core/geometry.hpp"

#include <array>
#include <optional>
#include <span>

namespace lodtex::brep {

/// Local orthonormal frame of a planar region; n = u x v.
struct PlaneFrame {
    Vec3 centroid = Vec3::Zero();
    Vec3 u = Vec3::UnitX();
    Vec3 v = Vec3::UnitY();
    Vec3 n = Vec3::UnitZ();
};

/// PCA plane. n is flipped toward camera_hint when given, else toward +y
/// (falling back to +x, then +z, for normals orthogonal to y).
PlaneFrame fit_plane_pca(std::span<const Vec3> points, std::optional<Vec3> camera_hint = std::nullopt);

Vec2 project_to_plane(const Vec3& p, const PlaneFrame& f);
Vec3 unproject(const Vec2& xy, const PlaneFrame& f);

struct Rect2 {
    std::array<Vec2, 4> corners;  // counter-clockwise
    double area = 0.0;
};

/// Minimum-area enclosing rectangle (rotating calipers over hull edges).
Rect2 min_area_rect(std::span<const Vec2> points);

}  // namespace lodtex::brep
