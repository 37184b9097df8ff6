#pragma once

#include <Eigen/Dense>

#include <numbers>
#include <span>
#include <vector>

namespace lodtex {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

using Ring2 = std::vector<Vec2>;

inline constexpr double kPi = std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Wraps an angle to [0, 360).
double wrap360(double deg);
/// Wraps an angle to (-180, 180].
double wrap180(double deg);

/// 2D cross product (z component).
inline double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

/// Shoelace signed area; positive for counter-clockwise rings. Closure is implied.
double signed_area(std::span<const Vec2> ring);
double perimeter(std::span<const Vec2> ring);
Vec2 polygon_centroid(std::span<const Vec2> ring);

/// Even-odd point-in-polygon test.
bool point_in_polygon(const Vec2& p, std::span<const Vec2> ring);

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b);

/// Proper or touching intersection of closed segments ab and cd.
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

/// Distance from p to the polygon region; 0 when p is inside.
double point_polygon_distance(const Vec2& p, std::span<const Vec2> ring);

/// Minimum distance between two polygon regions; 0 when they overlap.
double polygon_polygon_distance(std::span<const Vec2> a, std::span<const Vec2> b);

/// Andrew's monotone chain. Counter-clockwise, collinear points dropped,
/// starting from the lowest-x (then lowest-y) point.
Ring2 convex_hull(std::span<const Vec2> points);

/// True if the ring has any pair of non-adjacent edges that intersect.
bool ring_self_intersects(std::span<const Vec2> ring);

}  // namespace lodtex
