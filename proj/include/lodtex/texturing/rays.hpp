#pragma once

#include "lodtex/brep/camera.hpp"
#include "lodtex/brep/plane.hpp"

#include <optional>
#include <span>
#include <vector>

namespace lodtex::texturing {

struct Ray {
    Vec3 origin;
    Vec3 dir;
};

/// East-north-up direction for an angle relative to the heading and a pitch.
Vec3 world_direction(double heading_deg, double rel_angle_deg, double pitch_deg);

/// |h_angles| x |pitches| rays, horizontal index varying fastest. h_angles
/// are relative to pose.heading. The near offset is applied along
/// -facade_normal when one is given, else along the heading.
std::vector<Ray> camera_rays(const brep::CameraPose& pose, std::span<const double> h_angles,
                             std::span<const double> pitches, const Vec3& facade_normal = Vec3::Zero());

struct PlaneHit {
    double t;
    Vec3 point;
};

std::optional<PlaneHit> ray_plane(const Vec3& origin, const Vec3& dir, const brep::PlaneFrame& f);

}  // namespace lodtex::texturing
