#include "lodtex/texturing/rays.hpp"

#include "lodtex/panorama/spherical.hpp"

#include <cmath>

namespace lodtex::texturing {

Vec3 world_direction(double heading_deg, double rel_angle_deg, double pitch_deg) {
    const Vec3 d = panorama::dir_from_spherical(rel_angle_deg, pitch_deg);
    const double h = deg2rad(heading_deg);
    const Vec3 fwd(std::sin(h), std::cos(h), 0.0);
    const Vec3 right(std::cos(h), -std::sin(h), 0.0);
    return d.x() * right + d.y() * Vec3::UnitZ() + d.z() * fwd;
}

std::vector<Ray> camera_rays(const brep::CameraPose& pose, std::span<const double> h_angles,
                             std::span<const double> pitches, const Vec3& facade_normal) {
    const Vec3 toward = facade_normal.norm() > 0 ? Vec3(-facade_normal) : world_direction(pose.heading, 0.0, 0.0);
    const Vec3 o = brep::camera_origin(pose, toward);
    std::vector<Ray> rays;
    rays.reserve(h_angles.size() * pitches.size());
    for (double p : pitches)
        for (double h : h_angles) rays.push_back({o, world_direction(pose.heading, h, p)});
    return rays;
}

std::optional<PlaneHit> ray_plane(const Vec3& origin, const Vec3& dir, const brep::PlaneFrame& f) {
    const double denom = dir.dot(f.n);
    if (std::abs(denom) <= 1e-9) return std::nullopt;
    const double t = (f.centroid - origin).dot(f.n) / denom;
    if (!(t > 0.0)) return std::nullopt;
    return PlaneHit{t, origin + t * dir};
}

}  // namespace lodtex::texturing
