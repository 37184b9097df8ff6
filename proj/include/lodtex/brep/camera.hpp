#pragma once

#include "lodtex/core/geometry.hpp"

namespace lodtex::brep {

/// Street-level camera. position is on the ground (z = building lower
/// bound); the optical centre sits height metres above it.
struct CameraPose {
    Vec3 position = Vec3::Zero();
    double heading = 0.0;  // degrees clockwise from north
    double fov = 90.0;     // degrees
    double height = 1.7;
    double near_offset = 0.01;
    double pitch = 0.0;  // centre of the pitch sweep, degrees
};

/// Validates 0 < fov < 180 and height > 0, throws ArgumentError otherwise.
void validate_pose(const CameraPose& p);

/// Camera centre, pushed near_offset along toward (when non-zero).
Vec3 camera_origin(const CameraPose& p, const Vec3& toward = Vec3::Zero());

}  // namespace lodtex::brep
